#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etaq/errors.hpp"

namespace etaq {

// Tower levels: F_p (prime), F_q = F_p[t]/(modulus) with q = p^l (base),
// F_{q^n} = F_q[u]/(ext_modulus) (ext; configured only when n >= 2).
enum class Level { prime, base, ext };

enum class FFOp { add, mul, inv, pow };
enum class TraceNorm { trace, norm };

struct FieldParams {
  long long p = 2;
  int l = 1;
  // Monic irreducible over F_p, coefficients low-to-high, length l+1.
  // Empty selects the default: the first irreducible in enumeration order.
  std::vector<int> modulus;
  int n = 1;
  // Monic irreducible over F_q, length n+1; entries are base-element
  // coordinate vectors over F_p (a bare prime value is a length-1 vector).
  // Empty selects the default.
  std::vector<std::vector<int>> ext_modulus;
};

// Coordinates over the next level down in the power basis of the defining
// modulus: prime {v}, base l entries in [0,p), ext n entries that are base
// element indices in [0,q).
struct FieldElement {
  Level level;
  std::vector<int> coords;
  bool operator==(const FieldElement&) const = default;
};

// Exact arithmetic over the tower, table-driven. Elements at each level are
// dense indices: 0 is zero, 1 is one, and an element of a subfield keeps the
// same index when embedded upward (coords are mixed-radix digits, low first).
// Sizes are capped at desk scale (every level <= 1024 elements).
class Field {
 public:
  explicit Field(const FieldParams& params);

  long long p() const { return p_; }
  int l() const { return l_; }
  int n() const { return n_; }
  long long q() const { return q_; }
  bool has_ext() const { return n_ >= 2; }
  long long size(Level lv) const;

  // Index arithmetic.
  int add(Level lv, int a, int b) const;
  int sub(Level lv, int a, int b) const;
  int neg(Level lv, int a) const;
  int mul(Level lv, int a, int b) const;
  int inv(Level lv, int a) const;  // throws DomainError on zero
  int pow(Level lv, int a, long long e) const;

  // Uniform operation dispatcher; for pow, b is the exponent; for inv, b is
  // ignored.
  int ff_arithmetic(Level lv, int a, long long b, FFOp op) const;

  // a^q at ext level (the relative Frobenius).
  int frobenius(int a) const;

  // Trace to F_p: from base, sum of a^{p^i}, i < l; from ext, the composite
  // through the base level. Result is a prime-level value in [0, p).
  int absolute_trace(Level lv, int a) const;

  // Relative trace/norm F_{q^n} -> F_q; result is a base-level index.
  int relative_trace_norm(int a, TraceNorm which) const;

  // Subfield embeddings are the identity on indices; these just range-check.
  int embed(Level from, Level to, int a) const;

  std::vector<int> enumerate_elements(Level lv) const;

  FieldElement to_element(Level lv, int idx) const;
  int from_element(const FieldElement& e) const;

  // Defining moduli actually in use (after defaulting).
  const std::vector<int>& base_modulus() const { return mod_; }
  const std::vector<int>& ext_modulus() const { return emod_; }  // base indices

  // Diagnostic rendering, e.g. "[0,1]" for omega in F_4.
  std::string show(Level lv, int idx) const;

  // Schoolbook coordinate arithmetic (the construction oracle, exposed so
  // tests can cross-check the tables against it).
  std::vector<int> naive_base_mul(const std::vector<int>& a,
                                  const std::vector<int>& b) const;
  std::vector<int> naive_ext_mul(const std::vector<int>& a,
                                 const std::vector<int>& b) const;

 private:
  void check_level(Level lv) const;
  void build_base();
  void build_ext();

  long long p_;
  int l_, n_;
  long long q_, qn_;
  std::vector<int> mod_;   // over F_p, length l+1, monic
  std::vector<int> emod_;  // over base (indices), length n+1, monic

  // Base tables (size q_ or q_*q_).
  std::vector<int> badd_, bmul_, binv_, btr_;
  // Ext tables (size qn_ or qn_*qn_), present iff n_ >= 2.
  std::vector<int> eadd_, emul_, einv_, efrob_, etr_, enorm_, etrp_;
};

}  // namespace etaq

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "etaq/field.hpp"

namespace etaq {

// Dense polynomial over one tower level; coefficients are field-element
// indices, low degree first, canonical (no trailing zeros; zero poly is {}).
struct Poly {
  Level level = Level::base;
  std::vector<int> c;

  int deg() const { return int(c.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  bool operator==(const Poly&) const = default;
};

struct FactoredPoly {
  int unit = 1;                               // leading coefficient of the input
  std::vector<std::pair<Poly, int>> factors;  // (monic irreducible, multiplicity)
};

enum class PolyOp { add, mul, divmod, gcd };
enum class ResidueKind { complete, k_reduced };

// Arithmetic context for F[x] with F = one level of a Field tower. Caches
// factorizations and the irreducible sieve; caches are cleared never (desk
// scale) and the ring must outlive every Poly user.
class PolyRing {
 public:
  PolyRing(const Field& f, Level lv);

  const Field& field() const { return f_; }
  Level level() const { return lv_; }
  long long q() const { return q_; }  // coefficient field size

  Poly zero() const { return {lv_, {}}; }
  Poly one() const { return {lv_, {1}}; }
  Poly x() const { return {lv_, {0, 1}}; }
  Poly constant(int e) const { return e == 0 ? zero() : Poly{lv_, {e}}; }
  Poly from_coeffs(std::vector<int> c) const;  // trims trailing zeros

  int lead(const Poly& a) const;  // 0 for zero poly
  bool is_monic(const Poly& a) const { return !a.is_zero() && lead(a) == 1; }
  Poly monic(const Poly& a) const;  // zero stays zero

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly mul_scalar(const Poly& a, int e) const;
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly quot_exact(const Poly& a, const Poly& b) const;  // throws on remainder
  Poly pow(const Poly& a, int e) const;
  bool divides(const Poly& d, const Poly& a) const;

  // Uniform dispatcher mirroring the scalar one; divmod/gcd via dedicated
  // methods when both results are needed.
  Poly poly_arithmetic(const Poly& a, const Poly& b, PolyOp op) const;

  Poly gcd(const Poly& a, const Poly& b) const;  // monic, or zero for (0,0)

  // Largest monic D with D^k | a and D^k | b ((a,b)_k = D^k). Errors on (0,0).
  Poly power_gcd(const Poly& a, const Poly& b, int k) const;

  FactoredPoly factorize(const Poly& h) const;  // cached; errors on zero
  bool is_irreducible(const Poly& h) const;
  const std::vector<Poly>& irreducibles(int deg) const;  // sieve, cached

  std::vector<Poly> monic_divisors(const Poly& h) const;  // sorted (deg, rank)
  std::pair<Poly, Poly> squarefree_split(const Poly& h) const;  // (hbar, hstar)

  std::vector<Poly> monic_by_degree(int d) const;
  // All polynomials of degree <= d, including zero and non-monic ones.
  std::vector<Poly> all_by_max_degree(int d) const;

  // Residue system modulo h^k: complete = all q^{k deg h} residues of degree
  // < k*deg(h); k_reduced = those with power_gcd(r, h^k, k) = 1.
  std::vector<Poly> residue_system(const Poly& h, int k, ResidueKind kind) const;

  // Base-q rank of the coefficient vector; injective on canonical polys.
  // Degree is capped so the rank fits in 64 bits.
  uint64_t encode(const Poly& a) const;
  Poly decode(uint64_t rank, int max_len) const;

  // Canonical text form: terms high degree first, `c*x^e` joined by `+`;
  // round-trips with the CLI parser.
  std::string show(const Poly& a) const;

 private:
  const Field& f_;
  Level lv_;
  long long q_;
  mutable std::vector<std::vector<Poly>> sieve_;  // irreducibles by degree
  mutable std::unordered_map<uint64_t, FactoredPoly> fcache_;
};

// Coefficientwise embedding F_q[x] -> F_{q^n}[x] (same Field, base -> ext).
Poly lift_to_extension(const PolyRing& base, const PolyRing& ext, const Poly& a);

// Coefficientwise relative Frobenius on F_{q^n}[x].
Poly frobenius_poly(const PolyRing& ext, const Poly& a);

}  // namespace etaq

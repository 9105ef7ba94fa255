#pragma once

#include <vector>

#include "etaq/poly.hpp"

namespace etaq {

// A p-th root of unity zeta_p^exponent, zeta_p = e^{2 pi i / p}.
struct CycloValue {
  long long p = 2;
  int exponent = 0;  // in [0, p)
  bool operator==(const CycloValue&) const = default;
};

// Exact integer combination of p-th roots of unity: counts[j] is the
// multiplicity of zeta_p^j. Representations differing by a constant on all
// slots are equal (sum of all p-th roots vanishes).
struct CycloInt {
  long long p = 2;
  std::vector<long long> counts;  // size p

  explicit CycloInt(long long p_ = 2) : p(p_), counts(p_, 0) {}
};

// t(a) modulo h twisted by g: the coefficient of x^{m-1} (m = deg h) in the
// canonical residue of g*a mod h, as a field-element index at the ring level.
// Requires deg h >= 1; non-monic h is normalized (same ideal).
int t_function(const PolyRing& r, const Poly& a, const Poly& g, const Poly& h);

// The additive character E(g, h^k) at a: zeta_p^{tr(t_g(a))} with the
// absolute trace to F_p. Unit h gives the principal character.
CycloValue additive_char(const PolyRing& r, const Poly& g, const Poly& h, int k,
                         const Poly& a);

// Extension character psi_g^(n)(a) for base-level g, h and ext-level a:
// reduce a mod h^k, take the coefficientwise relative trace, then apply the
// base character. Equals additive_char over the extension ring on lifted
// (g, h) -- trace transitivity; both routes are exposed so tests can compare.
CycloValue extension_char(const PolyRing& base, const PolyRing& ext,
                          const Poly& g, const Poly& h, int k, const Poly& a);

// Exact accumulation of character values.
void accumulate(CycloInt& acc, const CycloValue& v);
CycloInt char_sum(const std::vector<CycloValue>& values);

bool cyclo_equal(const CycloInt& a, const CycloInt& b);

// Extract the integer a CycloInt represents. Throws InternalError when the
// value is irrational (counts on the non-trivial roots disagree): every sum
// this library forms is provably a rational integer, so that is a bug signal.
long long cyclo_to_integer(const CycloInt& c);

// The CycloInt representing m * zeta_p^exponent.
CycloInt cyclo_scaled(long long p, int exponent, long long m);

}  // namespace etaq

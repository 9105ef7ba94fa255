#include "etaq/eta.hpp"

#include <cmath>

#include "etaq/arith.hpp"
#include "etaq/charsum.hpp"
#include "etaq/errors.hpp"

namespace etaq {

namespace {

void check_budget(long long ring_q, int deg_h, int k, int budget_bits) {
  const double bits = k * deg_h * std::log2((double)ring_q);
  if (bits > budget_bits)
    throw BudgetError("direct summation refused: k*deg(h)*log2(q) = " +
                      std::to_string(bits) + " exceeds budget " +
                      std::to_string(budget_bits));
}

long long ipow_ll(long long b, long long e) {
  long long acc = 1;
  for (long long i = 0; i < e; ++i) acc *= b;
  return acc;
}

// Streams the k-reduced residues mod hm^k (hm monic, over the ring of hm)
// without materializing the system, invoking fn on each. A residue is
// k-reduced iff no prime P | hm has P^k dividing it.
template <typename Fn>
void for_each_reduced_residue(const PolyRing& r, const Poly& hm, int k, Fn fn) {
  const int m = k * hm.deg();
  if (m == 0) {
    fn(r.zero());
    return;
  }
  std::vector<Poly> prime_powers;
  for (const auto& [prime, e] : r.factorize(hm).factors) {
    (void)e;
    prime_powers.push_back(r.pow(prime, k));
  }
  const int q = (int)r.q();
  std::vector<int> c(m, 0);
  for (;;) {
    // Advance the coefficient odometer (skipping the zero residue).
    int i = 0;
    while (i < m && ++c[i] == q) c[i++] = 0;
    if (i == m) break;
    Poly d = r.from_coeffs(c);
    bool reduced = true;
    for (const Poly& pk : prime_powers)
      if (r.divides(pk, d)) {
        reduced = false;
        break;
      }
    if (reduced) fn(d);
  }
}

}  // namespace

long long eta_direct(const PolyRing& r, const Poly& g, const Poly& h, int k,
                     int budget_bits) {
  if (h.is_zero()) throw DomainError("eta with zero modulus");
  if (k < 1) throw DomainError("eta needs k >= 1");
  const Poly hm = r.monic(h);
  check_budget(r.q(), hm.deg(), k, budget_bits);
  CycloInt acc(r.field().p());
  for_each_reduced_residue(r, hm, k, [&](const Poly& d) {
    accumulate(acc, additive_char(r, g, hm, k, d));
  });
  return cyclo_to_integer(acc);
}

long long eta_direct_ext(const PolyRing& base, const PolyRing& ext,
                         const Poly& g, const Poly& h, int k, int budget_bits) {
  if (h.is_zero()) throw DomainError("eta with zero modulus");
  if (k < 1) throw DomainError("eta needs k >= 1");
  const Poly hm = base.monic(h);
  check_budget(ext.q(), hm.deg(), k, budget_bits);
  const Poly hl = lift_to_extension(base, ext, hm);
  CycloInt acc(base.field().p());
  for_each_reduced_residue(ext, hl, k, [&](const Poly& d) {
    accumulate(acc, extension_char(base, ext, g, hm, k, d));
  });
  return cyclo_to_integer(acc);
}

long long eta_kluyver(const PolyRing& r, const Poly& g, const Poly& h, int k) {
  if (h.is_zero()) throw DomainError("eta with zero modulus");
  if (k < 1) throw DomainError("eta needs k >= 1");
  const Poly hm = r.monic(h);
  long long total = 0;
  for (const Poly& d : r.monic_divisors(hm)) {
    if (!r.divides(r.pow(d, k), g)) continue;  // zero g passes every divisor
    total += ipow_ll(r.q(), (long long)k * d.deg()) *
             mobius(r, r.quot_exact(hm, d));
  }
  return total;
}

long long eta_holder(const PolyRing& r, const Poly& g, const Poly& h, int k) {
  if (h.is_zero()) throw DomainError("eta with zero modulus");
  if (k < 1) throw DomainError("eta needs k >= 1");
  const Poly hm = r.monic(h);
  const Poly a = r.power_gcd(g, r.pow(hm, k), k);
  const Poly n = r.quot_exact(hm, a);
  const long long mu = mobius(r, n);
  if (mu == 0) return 0;
  const long long num = totient(r, hm, k) * mu;
  const long long den = totient(r, n, k);
  if (num % den != 0) throw InternalError("Holder quotient not integral");
  return num / den;
}

long long eta(const PolyRing& r, const Poly& g, const Poly& h, int k,
              EtaMethod method, int budget_bits) {
  switch (method) {
    case EtaMethod::direct: return eta_direct(r, g, h, k, budget_bits);
    case EtaMethod::kluyver: return eta_kluyver(r, g, h, k);
    case EtaMethod::holder: return eta_holder(r, g, h, k);
  }
  throw InternalError("unknown eta method");
}

}  // namespace etaq

#include "etaq/arith.hpp"

#include <cmath>

#include "etaq/errors.hpp"

namespace etaq {

namespace {

long long ipow_checked(long long b, long long e) {
  long long acc = 1;
  for (long long i = 0; i < e; ++i) {
    if (acc > (long long)4e18 / b) throw DomainError("integer power overflow");
    acc *= b;
  }
  return acc;
}

}  // namespace

int mobius(const PolyRing& r, const Poly& h) {
  if (h.is_zero()) return 0;
  const auto& factors = r.factorize(h).factors;
  for (const auto& [prime, e] : factors) {
    (void)prime;
    if (e >= 2) return 0;
  }
  return factors.size() % 2 == 0 ? 1 : -1;
}

long long totient(const PolyRing& r, const Poly& h, int k) {
  if (h.is_zero()) throw DomainError("totient of the zero polynomial");
  if (k < 1) throw DomainError("totient needs k >= 1");
  // prod over P^e || h of (|P|^{ke} - |P|^{k(e-1)}).
  long long acc = 1;
  for (const auto& [prime, e] : r.factorize(h).factors) {
    long long pk = ipow_checked(r.q(), (long long)k * prime.deg());
    long long local = ipow_checked(pk, e - 1) * (pk - 1);
    if (acc > (long long)4e18 / local) throw DomainError("totient overflow");
    acc *= local;
  }
  return acc;
}

long long totient_count(const PolyRing& r, const Poly& h, int k) {
  if (h.is_zero()) throw DomainError("totient of the zero polynomial");
  return (long long)r.residue_system(h, k, ResidueKind::k_reduced).size();
}

Rational totient_exact(const PolyRing& r, const Poly& h, long long z) {
  if (h.is_zero()) throw DomainError("totient of the zero polynomial");
  Rational acc = Rational(r.q()).pow(z * h.deg());
  for (const auto& [prime, e] : r.factorize(h).factors) {
    (void)e;
    acc = acc * (Rational(1) - Rational(r.q()).pow(-z * prime.deg()));
  }
  return acc;
}

std::complex<double> phi_z(const PolyRing& r, const Poly& h,
                           std::complex<double> z) {
  if (h.is_zero()) throw DomainError("totient of the zero polynomial");
  const double logq = std::log((double)r.q());
  std::complex<double> acc = std::exp(z * (double)h.deg() * logq);
  for (const auto& [prime, e] : r.factorize(h).factors) {
    (void)e;
    acc *= 1.0 - std::exp(-z * (double)prime.deg() * logq);
  }
  return acc;
}

double mangoldt(const PolyRing& r, const Poly& h) {
  return mangoldt_degree(r, h) * std::log((double)r.q());
}

int mangoldt_degree(const PolyRing& r, const Poly& h) {
  if (h.is_zero()) throw DomainError("mangoldt of the zero polynomial");
  const auto& factors = r.factorize(h).factors;
  return factors.size() == 1 ? factors[0].first.deg() : 0;
}

}  // namespace etaq

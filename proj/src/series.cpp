#include "etaq/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "etaq/arith.hpp"
#include "etaq/errors.hpp"
#include "etaq/eta.hpp"

namespace etaq {

namespace {

constexpr double kPoleTol = 1e-9;

// q^e as a complex exponential, valid for any complex e.
std::complex<double> cqpow(long long q, std::complex<double> e) {
  return std::exp(e * std::log(static_cast<double>(q)));
}

double dqpow(long long q, double e) {
  return std::pow(static_cast<double>(q), e);
}

long long ipow_ll(long long b, int e) {
  long long acc = 1;
  for (int i = 0; i < e; ++i) {
    if (acc > std::numeric_limits<long long>::max() / b)
      throw DomainError("integer overflow in power computation");
    acc *= b;
  }
  return acc;
}

// Monic divisor degrees D with D^k | g, as a multiset of degrees (g != 0).
std::vector<int> kth_power_divisor_degrees(const PolyRing& r, const Poly& g,
                                           int k) {
  std::vector<int> degs;
  const Poly gm = r.monic(g);
  for (const Poly& d : r.monic_divisors(gm)) {
    if (r.divides(r.pow(d, k), gm)) degs.push_back(d.deg());
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

// Pairs (mu(h/D), deg D) over monic divisors D of h.
struct MuDeg {
  int mu;
  int deg;
};
std::vector<MuDeg> mobius_divisor_pairs(const PolyRing& r, const Poly& h) {
  std::vector<MuDeg> out;
  const Poly hm = r.monic(h);
  for (const Poly& d : r.monic_divisors(hm)) {
    out.push_back(MuDeg{mobius(r, r.quot_exact(hm, d)), d.deg()});
  }
  return out;
}

double simpson(const std::vector<double>& v, double h) {
  // v holds samples on an even number of equal subintervals.
  double s = v.front() + v.back();
  for (size_t i = 1; i + 1 < v.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * v[i];
  return s * h / 3.0;
}

}  // namespace

Rational zeta_A_exact(long long q, long long s) {
  if (s == 1) throw PoleError("zeta_A has a pole at s = 1");
  return Rational(1) / (Rational(1) - Rational(q).pow(1 - s));
}

std::complex<double> zeta_A(long long q, std::complex<double> s) {
  const std::complex<double> d = 1.0 - cqpow(q, 1.0 - s);
  if (std::abs(d) < kPoleTol)
    throw PoleError("zeta_A has a pole on the line q^{1-s} = 1");
  return 1.0 / d;
}

Rational zeta_A_partial_exact(long long q, long long s, int maxdeg) {
  Rational acc(0);
  for (int n = 0; n <= maxdeg; ++n) acc = acc + Rational(q).pow((1 - s) * n);
  return acc;
}

std::complex<double> zeta_A_partial(long long q, std::complex<double> s,
                                    int maxdeg) {
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= maxdeg; ++n)
    acc += cqpow(q, (1.0 - s) * static_cast<double>(n));
  return acc;
}

std::vector<long long> a_coeffs(const PolyRing& r, const Poly& g, int k) {
  if (k < 1) throw DomainError("a_coeffs requires k >= 1");
  if (g.is_zero())
    throw DomainError(
        "a_coeffs: the g = 0 series has no finitely supported coefficients");
  const std::vector<int> degs = kth_power_divisor_degrees(r, g, k);
  const int gdeg = r.monic(g).deg();
  const int len = gdeg / k + 2;  // support ends at floor(deg g / k) + 1
  std::vector<long long> gamma(len + 1, 0);
  for (int d : degs)
    if (d + 1 <= len) ++gamma[d];
  std::vector<long long> a(len, 0);
  const long long q = r.q();
  for (int n = 0; n < len; ++n) {
    long long v = ipow_ll(q, n * k) * gamma[n];
    if (n >= 1) v -= ipow_ll(q, (n - 1) * k + 1) * gamma[n - 1];
    a[n] = v;
  }
  return a;
}

std::vector<long long> a_coeffs_bruteforce(const PolyRing& r, const Poly& g,
                                           int k, int nmax) {
  std::vector<long long> a;
  for (int n = 0; n <= nmax; ++n) {
    long long acc = 0;
    for (const Poly& h : r.monic_by_degree(n)) acc += eta_holder(r, g, h, k);
    a.push_back(acc);
  }
  return a;
}

Rational delta_exact(const PolyRing& r, const Poly& g, int k, long long s,
                     SeriesMethod method) {
  if (k < 1) throw DomainError("delta requires k >= 1");
  const long long q = r.q();
  if (g.is_zero()) {
    if (method == SeriesMethod::truncated)
      throw DomainError(
          "delta: the g = 0 series has no finite truncation (pole at "
          "s = k+1)");
    if (s == k + 1)
      throw PoleError("delta with g = 0 has a pole at s = k + 1");
    return (Rational(1) - Rational(q).pow(1 - s)) /
           (Rational(1) - Rational(q).pow(k + 1 - s));
  }
  if (method == SeriesMethod::closed) {
    Rational acc(0);
    for (int d : kth_power_divisor_degrees(r, g, k))
      acc = acc + Rational(q).pow((k - s) * d);
    return (Rational(1) - Rational(q).pow(1 - s)) * acc;
  }
  Rational acc(0);
  const std::vector<long long> a = a_coeffs(r, g, k);
  for (size_t n = 0; n < a.size(); ++n)
    acc = acc + Rational(a[n]) * Rational(q).pow(-s * static_cast<long long>(n));
  return acc;
}

std::complex<double> delta(const PolyRing& r, const Poly& g, int k,
                           std::complex<double> s, SeriesMethod method) {
  if (k < 1) throw DomainError("delta requires k >= 1");
  const long long q = r.q();
  if (g.is_zero()) {
    if (method == SeriesMethod::truncated)
      throw DomainError(
          "delta: the g = 0 series has no finite truncation (pole at "
          "s = k+1)");
    const std::complex<double> den = 1.0 - cqpow(q, double(k) + 1.0 - s);
    if (std::abs(den) < kPoleTol)
      throw PoleError("delta with g = 0 has a pole on the line s = k + 1");
    return (1.0 - cqpow(q, 1.0 - s)) / den;
  }
  if (method == SeriesMethod::closed) {
    std::complex<double> acc = 0.0;
    for (int d : kth_power_divisor_degrees(r, g, k))
      acc += cqpow(q, (double(k) - s) * static_cast<double>(d));
    return (1.0 - cqpow(q, 1.0 - s)) * acc;
  }
  std::complex<double> acc = 0.0;
  const std::vector<long long> a = a_coeffs(r, g, k);
  for (size_t n = 0; n < a.size(); ++n)
    acc += static_cast<double>(a[n]) * cqpow(q, -s * static_cast<double>(n));
  return acc;
}

std::vector<long long> b_coeffs(const PolyRing& r, const Poly& h, int k) {
  if (k < 1) throw DomainError("b_coeffs requires k >= 1");
  const Poly hm = r.monic(h);
  if (hm.deg() < 1)
    throw DomainError(
        "b_coeffs: the deg h = 0 series has no finitely supported "
        "coefficients");
  const std::vector<MuDeg> pairs = mobius_divisor_pairs(r, hm);
  const int len = k * hm.deg();  // B(n) = 0 for n >= k deg h
  std::vector<long long> b(len, 0);
  for (int n = 0; n < len; ++n) {
    long long acc = 0;
    for (const MuDeg& md : pairs)
      if (k * md.deg <= n) acc += md.mu;
    b[n] = ipow_ll(r.q(), n) * acc;
  }
  return b;
}

std::vector<long long> b_coeffs_bruteforce(const PolyRing& r, const Poly& h,
                                           int k, int nmax) {
  std::vector<long long> b;
  for (int n = 0; n <= nmax; ++n) {
    long long acc = 0;
    for (const Poly& g : r.monic_by_degree(n)) acc += eta_holder(r, g, h, k);
    b.push_back(acc);
  }
  return b;
}

Rational tau_exact(const PolyRing& r, const Poly& h, int k, long long s,
                   SeriesMethod method) {
  if (k < 1) throw DomainError("tau requires k >= 1");
  const Poly hm = r.monic(h);
  const long long q = r.q();
  if (hm.deg() < 1) {
    if (method == SeriesMethod::truncated)
      throw DomainError(
          "tau: the deg h = 0 series has no finite truncation (pole at "
          "s = 1)");
    return zeta_A_exact(q, s);
  }
  if (method == SeriesMethod::closed) {
    if (s == 1) return Rational(-static_cast<long long>(k) *
                                mangoldt_degree(r, hm));
    return zeta_A_exact(q, s) * totient_exact(r, hm, k * (1 - s));
  }
  Rational acc(0);
  const std::vector<long long> b = b_coeffs(r, hm, k);
  for (size_t n = 0; n < b.size(); ++n)
    acc = acc + Rational(b[n]) * Rational(q).pow(-s * static_cast<long long>(n));
  return acc;
}

std::complex<double> tau(const PolyRing& r, const Poly& h, int k,
                         std::complex<double> s, SeriesMethod method) {
  if (k < 1) throw DomainError("tau requires k >= 1");
  const Poly hm = r.monic(h);
  const long long q = r.q();
  if (hm.deg() < 1) {
    if (method == SeriesMethod::truncated)
      throw DomainError(
          "tau: the deg h = 0 series has no finite truncation (pole at "
          "s = 1)");
    return zeta_A(q, s);
  }
  if (method == SeriesMethod::closed) {
    // On the line q^{1-s} = 1 the singularity is removable with the same
    // limit at every such point.
    if (std::abs(1.0 - cqpow(q, 1.0 - s)) < kPoleTol)
      return std::complex<double>(
          -static_cast<double>(k) * mangoldt_degree(r, hm), 0.0);
    return zeta_A(q, s) * phi_z(r, hm, double(k) * (1.0 - s));
  }
  std::complex<double> acc = 0.0;
  const std::vector<long long> b = b_coeffs(r, hm, k);
  for (size_t n = 0; n < b.size(); ++n)
    acc += static_cast<double>(b[n]) * cqpow(q, -s * static_cast<double>(n));
  return acc;
}

Rational tau_aux_exact(const PolyRing& r, const Poly& h, int k, long long s) {
  if (k < 1) throw DomainError("tau_aux requires k >= 1");
  if (s < 2) throw DomainError("tau_aux converges only for s > 1");
  const Poly hm = r.monic(h);
  return zeta_A_exact(r.q(), s) * totient_exact(r, hm, k * s) *
         Rational(r.q()).pow(-k * s * hm.deg());
}

Rational tau_aux_partial_exact(const PolyRing& r, const Poly& h, int k,
                               long long s, int maxdeg) {
  if (k < 1) throw DomainError("tau_aux requires k >= 1");
  const Poly hm = r.monic(h);
  const Poly hk = r.pow(hm, k);
  Rational acc(0);
  for (int n = 0; n <= maxdeg; ++n) {
    for (const Poly& g : r.monic_by_degree(n)) {
      if (hm.deg() == 0 || r.power_gcd(g, hk, k).is_one())
        acc = acc + Rational(r.q()).pow(-s * n);
    }
  }
  return acc;
}

Rational sigma_exact(const PolyRing& r, const Poly& h, long long s,
                     SeriesMethod method, int maxdeg) {
  const Poly hm = r.monic(h);
  const int mu = mobius(r, hm);
  if (mu == 0) throw DomainError("sigma requires square-free h");
  if (s < 2) throw DomainError("sigma converges only for Re s > 1");
  const long long q = r.q();
  if (method == SeriesMethod::closed) {
    Rational acc = zeta_A_exact(q, s) * (Rational(1) - Rational(q).pow(1 - 2 * s));
    for (const auto& [p, e] : r.factorize(hm).factors) {
      const Rational pn = Rational(q).pow(p.deg());      // |P|
      const Rational ps = Rational(q).pow(s * p.deg());  // |P|^s
      acc = acc * (Rational(1) - pn + ps) / (Rational(1) + ps);
      (void)e;
    }
    return acc / Rational(mu);
  }
  if (maxdeg < 0) throw DomainError("sigma truncation needs maxdeg >= 0");
  Rational acc(0);
  for (int n = 0; n <= maxdeg; ++n) {
    long long etasum = 0;
    for (const Poly& g : r.monic_by_degree(n)) {
      if (mobius(r, g) != 0) etasum += eta_holder(r, g, hm, 1);
    }
    acc = acc + Rational(etasum) * Rational(q).pow(-s * n);
  }
  return acc;
}

std::complex<double> sigma(const PolyRing& r, const Poly& h,
                           std::complex<double> s, SeriesMethod method,
                           int maxdeg) {
  const Poly hm = r.monic(h);
  const int mu = mobius(r, hm);
  if (mu == 0) throw DomainError("sigma requires square-free h");
  if (s.real() <= 1.0) throw DomainError("sigma converges only for Re s > 1");
  const long long q = r.q();
  if (method == SeriesMethod::closed) {
    std::complex<double> acc =
        zeta_A(q, s) * (1.0 - cqpow(q, 1.0 - 2.0 * s));
    for (const auto& [p, e] : r.factorize(hm).factors) {
      const double pn = dqpow(q, p.deg());
      const std::complex<double> ps = cqpow(q, s * static_cast<double>(p.deg()));
      acc = acc * (1.0 - pn + ps) / (1.0 + ps);
      (void)e;
    }
    return acc / static_cast<double>(mu);
  }
  if (maxdeg < 0) throw DomainError("sigma truncation needs maxdeg >= 0");
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= maxdeg; ++n) {
    long long etasum = 0;
    for (const Poly& g : r.monic_by_degree(n)) {
      if (mobius(r, g) != 0) etasum += eta_holder(r, g, hm, 1);
    }
    acc += static_cast<double>(etasum) * cqpow(q, -s * static_cast<double>(n));
  }
  return acc;
}

MeanSquareResult mean_square(const PolyRing& r, MeanSquareKind which, double c,
                             double T, const Poly& gh, int k, double step) {
  if (k < 1) throw DomainError("mean_square requires k >= 1");
  if (T <= 0 || step <= 0)
    throw DomainError("mean_square requires T > 0 and step > 0");
  const long long q = r.q();
  const Poly m = which == MeanSquareKind::delta ? gh : r.monic(gh);
  if (which == MeanSquareKind::delta && m.is_zero())
    throw DomainError("mean_square for delta requires g != 0");
  if (which == MeanSquareKind::tau && m.deg() < 1)
    throw DomainError("mean_square for tau requires deg h >= 1");
  if (which == MeanSquareKind::tau && std::abs(c - 1.0) < 1e-12)
    throw DomainError("mean_square for tau is stated off the line c = 1");

  const auto integrand = [&](double t) {
    const std::complex<double> s(c, t);
    const std::complex<double> v =
        which == MeanSquareKind::delta
            ? delta(r, m, k, s, SeriesMethod::closed)
            : tau(r, m, k, s, SeriesMethod::closed);
    return std::norm(v);
  };
  const auto integrate = [&](double st) {
    long long n = static_cast<long long>(std::ceil(2.0 * T / st));
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double hh = 2.0 * T / static_cast<double>(n);
    std::vector<double> v(static_cast<size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
      v[static_cast<size_t>(i)] = integrand(-T + hh * static_cast<double>(i));
    return simpson(v, hh) / (2.0 * T);
  };

  MeanSquareResult res{};
  const double coarse = integrate(step);
  const double fine = integrate(step / 2.0);
  res.numeric = fine;
  res.step_refinement =
      std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);

  if (which == MeanSquareKind::delta) {
    const std::vector<int> degs = kth_power_divisor_degrees(r, m, k);
    const double x = 2.0 * (static_cast<double>(k) - c);
    double s0 = 0.0, s1 = 0.0;
    for (int d : degs) s0 += dqpow(q, x * d);
    for (int d1 : degs)
      for (int d2 : degs)
        if (d1 == d2 + 1) s1 += dqpow(q, x * d1);
    res.formula = (1.0 + dqpow(q, 2.0 * (1.0 - c))) * s0 -
                  2.0 * dqpow(q, 1.0 - static_cast<double>(k)) * s1;
    double diag = 0.0;
    const std::vector<long long> a = a_coeffs(r, m, k);
    for (size_t n = 0; n < a.size(); ++n)
      diag += static_cast<double>(a[n]) * static_cast<double>(a[n]) *
              dqpow(q, -2.0 * c * static_cast<double>(n));
    res.diagonal_limit = diag;
  } else {
    const std::vector<MuDeg> pairs = mobius_divisor_pairs(r, m);
    const double w = 1.0 - c;
    double first = 0.0, second = 0.0;
    for (const MuDeg& md : pairs)
      first += static_cast<double>(md.mu * md.mu) * dqpow(q, 2.0 * w * md.deg);
    for (const MuDeg& d1 : pairs)
      for (const MuDeg& d2 : pairs)
        if (d1.deg > d2.deg)
          second += static_cast<double>(d1.mu * d2.mu) *
                    dqpow(q, (static_cast<double>(k) + 2.0) * w * d1.deg) *
                    dqpow(q, (2.0 - static_cast<double>(k)) * w * d2.deg);
    res.formula = (first + 2.0 * second) /
                  std::abs(1.0 - dqpow(q, 2.0 * w));
    double diag = 0.0;
    const std::vector<long long> b = b_coeffs(r, m, k);
    for (size_t n = 0; n < b.size(); ++n)
      diag += static_cast<double>(b[n]) * static_cast<double>(b[n]) *
              dqpow(q, -2.0 * c * static_cast<double>(n));
    res.diagonal_limit = diag;
  }
  return res;
}

}  // namespace etaq

#pragma once

#include <complex>
#include <vector>

#include "etaq/poly.hpp"
#include "etaq/rational.hpp"

namespace etaq {

enum class SeriesMethod { closed, truncated };

// zeta_A(s) = (1 - q^{1-s})^{-1}, the zeta function of the monic polynomials.
// Exact variants take integer s (the only points where q^{-s} is rational).
Rational zeta_A_exact(long long q, long long s);
std::complex<double> zeta_A(long long q, std::complex<double> s);
// Partial sum over monic polynomials of degree <= maxdeg.
Rational zeta_A_partial_exact(long long q, long long s, int maxdeg);
std::complex<double> zeta_A_partial(long long q, std::complex<double> s,
                                    int maxdeg);

// Degree-indexed coefficients A(n) of delta_k(s,g) = sum A(n) q^{-ns}:
// A(n) = q^{nk} gamma(g,n) - q^{(n-1)k+1} gamma(g,n-1) with gamma counting
// monic D of degree n with D^k | g. Finitely supported for g != 0
// (returned through index floor(deg g / k) + 1); bruteforce sums eta over
// all monic h of each degree, as an independent oracle.
std::vector<long long> a_coeffs(const PolyRing& r, const Poly& g, int k);
std::vector<long long> a_coeffs_bruteforce(const PolyRing& r, const Poly& g,
                                           int k, int nmax);

// delta_k(s,g): closed form (1-q^{1-s}) sum_{D^k|g} |D|^{k-s} for g != 0;
// for g = 0 the closed form is zeta^{-1}(s) zeta(s-k) with a genuine pole at
// s = k+1 (truncation refused: the coefficient sequence is not finitely
// supported). Truncated = the finite coefficient sum; equals closed.
Rational delta_exact(const PolyRing& r, const Poly& g, int k, long long s,
                     SeriesMethod method);
std::complex<double> delta(const PolyRing& r, const Poly& g, int k,
                           std::complex<double> s, SeriesMethod method);

// Coefficients B(n) of tau_k(s,h) = sum B(n) q^{-ns}:
// B(n) = q^n sum_{D|h, k deg D <= n} mu(h/D); zero for n >= k deg h.
// Requires deg h >= 1.
std::vector<long long> b_coeffs(const PolyRing& r, const Poly& h, int k);
std::vector<long long> b_coeffs_bruteforce(const PolyRing& r, const Poly& h,
                                           int k, int nmax);

// tau_k(s,h) = (1-q^{1-s})^{-1} phi_{k(1-s)}(h) for deg h >= 1; the pole-line
// points q^{1-s} = 1 are removable with value -k * mangoldt_degree(h).
// deg h = 0 gives zeta_A with its genuine pole at s = 1.
Rational tau_exact(const PolyRing& r, const Poly& h, int k, long long s,
                   SeriesMethod method);
std::complex<double> tau(const PolyRing& r, const Poly& h, int k,
                         std::complex<double> s, SeriesMethod method);

// Auxiliary series over k-coprime monic g of 1/|g|^s: closed form
// zeta_A(s) phi_{ks}(h) |h|^{-ks}; partial form sums degrees <= maxdeg.
Rational tau_aux_exact(const PolyRing& r, const Poly& h, int k, long long s);
Rational tau_aux_partial_exact(const PolyRing& r, const Poly& h, int k,
                               long long s, int maxdeg);

// Square-free series sigma(s,h) = sum over square-free monic g of
// eta(g,h)/|g|^s (k = 1), for square-free h and Re s > 1. Closed form:
// mu(h) sigma(s,h) = zeta(s) zeta^{-1}(2s) prod_{P|h} (1-|P|+|P|^s)/(1+|P|^s).
// Truncated sums through deg g <= maxdeg.
Rational sigma_exact(const PolyRing& r, const Poly& h, long long s,
                     SeriesMethod method, int maxdeg = -1);
std::complex<double> sigma(const PolyRing& r, const Poly& h,
                           std::complex<double> s, SeriesMethod method,
                           int maxdeg = -1);

enum class MeanSquareKind { delta, tau };

struct MeanSquareResult {
  double numeric;          // (1/2T) int_{-T}^{T} |f(c+it)|^2 dt, refined step
  double formula;          // the stated main term
  double diagonal_limit;   // sum_n coeff(n)^2 q^{-2nc}: the true T->inf limit
  double step_refinement;  // relative change of numeric when halving the step
};

// Composite-Simpson mean square of delta_k(c+it, gh) or tau_k(c+it, gh)
// against the stated main terms. delta needs gh != 0; tau needs deg gh >= 1
// and c != 1.
MeanSquareResult mean_square(const PolyRing& r, MeanSquareKind which, double c,
                             double T, const Poly& gh, int k,
                             double step = 1e-2);

}  // namespace etaq

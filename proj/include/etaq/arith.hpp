#pragma once

#include <complex>

#include "etaq/poly.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Mobius function: 1 on units, (-1)^t for t distinct irreducible factors,
// 0 when any factor repeats; mobius(0) = 0.
int mobius(const PolyRing& r, const Poly& h);

// Jordan totient phi_k(h) = |h|^k prod_{P|h} (1 - |P|^{-k}), exact integer;
// k = 1 is the Euler totient. Throws on h = 0 or k < 1.
long long totient(const PolyRing& r, const Poly& h, int k);

// Counting route for the same quantity: the number of k-reduced residues
// modulo h^k, by enumeration. Oracle for totient().
long long totient_count(const PolyRing& r, const Poly& h, int k);

// Generalized totient phi_z at an integer index, as an exact rational;
// agrees with totient() for z >= 1 and handles z <= 0 (phi_0 vanishes for
// deg h >= 1, negative z gives rationals).
Rational totient_exact(const PolyRing& r, const Poly& h, long long z);

// Generalized totient at complex index: |h|^z prod_{P|h} (1 - |P|^{-z}).
std::complex<double> phi_z(const PolyRing& r, const Poly& h,
                           std::complex<double> z);

// Mangoldt function: log|P| when h is a unit times P^t (t >= 1), else 0.
double mangoldt(const PolyRing& r, const Poly& h);

// Exact form of the same: deg P on prime powers, else 0 (mangoldt / log q).
int mangoldt_degree(const PolyRing& r, const Poly& h);

}  // namespace etaq

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "etaq/field.hpp"
#include "etaq/poly.hpp"

namespace etaq {

// One verified instance of a named identity. lhs and rhs are exact values
// rendered as text (integers, rationals "n/d", or complex "a+bi"); pass holds
// iff they matched under the identity's comparison (exact for integer and
// rational instances, 1e-9 relative for the complex-exponent ones).
struct IdentityReport {
  std::string identity_id;
  std::string instance;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  std::string note;  // optional context (skip reasons, comparison mode)
};

// Aggregate over all instances of one identity_id within a suite run.
struct IdentitySummary {
  std::string identity_id;
  long long instances = 0;
  long long failures = 0;
  bool pass = true;
  std::string note;
};

enum class Suite {
  holder,
  reciprocity,
  orthogonality,
  corollaries,
  davenport_hasse,
  all
};

Suite suite_from_name(const std::string& name);  // throws DomainError
std::string suite_name(Suite s);

struct SuiteOptions {
  int max_deg = 2;   // moduli swept through this degree
  int k_max = 2;
  double sample_rate = 0.05;        // share of memoized eta values re-derived
                                    // by direct character summation
  unsigned long long seed = 12345;  // sub-sample selection
  bool keep_all = false;  // retain passing reports too (bulk residue sweeps
                          // still aggregate to one report per cell)
  // Degree budget for direct summation inside sweeps (k*deg(h)*log2(q) of the
  // evaluation ring); systems over budget re-derive via the divisor sum
  // instead, which the smaller systems validate directly.
  int direct_budget_bits = 16;
};

struct SuiteResult {
  std::vector<IdentityReport> reports;  // failures, plus passes if keep_all
  std::vector<IdentitySummary> summaries;  // in first-appearance order
  long long instances = 0;
  long long failures = 0;
  bool pass = true;
};

// Run the named suite over every monic modulus with degree <= max_deg and
// k <= k_max in F_q[x] for the field's base level. The Davenport-Hasse suite
// needs the field's extension configured (n >= 2); without one it reports a
// skip note (the integer parity identity still runs).
SuiteResult run_suite(const Field& f, Suite suite, const SuiteOptions& opt);

// Single-instance checkers (reference forms used by the suites and tests).

// mu(Hbar) eta(G Hstar, H) / |Hstar| = mu(Gbar) eta(H Gstar, G) / |Gstar|
// with Hbar the largest square-free divisor and Hstar = H / Hbar.
IdentityReport check_reciprocity_first(const PolyRing& r, const Poly& g,
                                       const Poly& h);

// phi_k(D2) eta_k(R H / D2^k, D1) = phi_k(D1) eta_k(R H / D1^k, D2)
// for D1^k | H, D2^k | H and any R (R = 1 recovers the plain form).
IdentityReport check_reciprocity_second(const PolyRing& ring, const Poly& h,
                                        const Poly& d1, const Poly& d2, int k,
                                        const Poly& rr);

// Sum over A + B = G mod H^k of eta_k(A, D1) eta_k(B, D2): |H|^k eta_k(G, D)
// on the diagonal D1 = D2 = D, zero otherwise.
IdentityReport check_convolution_orthogonality(const PolyRing& r,
                                               const Poly& h, int k,
                                               const Poly& d1, const Poly& d2,
                                               const Poly& g);

// Sum over D | H of eta_k((H/D)^k, D1) eta_k((H/D2)^k, D): |H|^k on the
// diagonal D1 = D2, zero otherwise.
IdentityReport check_divisor_orthogonality(const PolyRing& r, const Poly& h,
                                           int k, const Poly& d1,
                                           const Poly& d2);

// The divisor-sum corollary battery for one modulus (residue totals, divisor
// sums, normalized orthogonality, totient quotients, and the weighted sum
// with complex exponent evaluated at the given s).
std::vector<IdentityReport> check_corollary_battery(const PolyRing& r,
                                                    const Poly& h, int k,
                                                    std::complex<double> s);

// (-1)^{m-m1} phi_k^ext(N)/phi_k^ext(H) eta_k^ext(G,H)
//   = ((-1)^{m-m1} phi_k(N)/phi_k(H) eta_k(G,H))^n
// with N = H/A, A^k = (G,H^k)_k, m = deg H, m1 = deg A; needs h^k not
// dividing g. eta^ext is evaluated natively over the extension ring.
IdentityReport check_davenport_hasse(const PolyRing& base, const PolyRing& ext,
                                     const Poly& g, const Poly& h, int k);

}  // namespace etaq

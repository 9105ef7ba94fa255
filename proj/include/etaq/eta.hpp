#pragma once

#include "etaq/poly.hpp"

namespace etaq {

enum class EtaMethod { direct, kluyver, holder };

// eta_k(g,h) by definition: the sum of E(g,h^k) over the k-reduced residues
// modulo h^k, accumulated exactly and extracted as an integer. Exponential in
// k*deg h; throws BudgetError when k*deg(h)*log2(q) exceeds budget_bits.
long long eta_direct(const PolyRing& r, const Poly& g, const Poly& h, int k,
                     int budget_bits = 24);

// The same sum over F_{q^n}[x] (residues and k-reduction taken there) with
// the extension character, for base-level g and h.
long long eta_direct_ext(const PolyRing& base, const PolyRing& ext,
                         const Poly& g, const Poly& h, int k,
                         int budget_bits = 24);

// Divisor-sum form: sum over monic D | h with D^k | g of |D|^k mu(h/D).
long long eta_kluyver(const PolyRing& r, const Poly& g, const Poly& h, int k);

// Closed form phi_k(h) mu(N) / phi_k(N) with N = h / (g,h^k)_k^{1/k};
// the division is exact by construction (checked).
long long eta_holder(const PolyRing& r, const Poly& g, const Poly& h, int k);

long long eta(const PolyRing& r, const Poly& g, const Poly& h, int k,
              EtaMethod method, int budget_bits = 24);

}  // namespace etaq

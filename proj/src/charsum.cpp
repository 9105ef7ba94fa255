#include "etaq/charsum.hpp"

#include "etaq/errors.hpp"

namespace etaq {

int t_function(const PolyRing& r, const Poly& a, const Poly& g, const Poly& h) {
  if (h.deg() < 1) throw DomainError("t-function needs a modulus of degree >= 1");
  const Poly res = r.mod(r.mul(g, a), r.monic(h));
  const int m = h.deg();
  return res.deg() == m - 1 ? res.c[m - 1] : 0;
}

CycloValue additive_char(const PolyRing& r, const Poly& g, const Poly& h, int k,
                         const Poly& a) {
  if (h.is_zero()) throw DomainError("character modulus is zero");
  if (k < 1) throw DomainError("character needs k >= 1");
  const long long p = r.field().p();
  if (h.deg() == 0) return {p, 0};  // unit modulus: principal
  const Poly hk = r.pow(r.monic(h), k);
  const int t = t_function(r, a, g, hk);
  return {p, r.field().absolute_trace(r.level(), t)};
}

CycloValue extension_char(const PolyRing& base, const PolyRing& ext,
                          const Poly& g, const Poly& h, int k, const Poly& a) {
  if (!base.field().has_ext())
    throw DomainError("extension character needs a configured extension");
  if (h.is_zero()) throw DomainError("character modulus is zero");
  if (k < 1) throw DomainError("character needs k >= 1");
  const long long p = base.field().p();
  if (h.deg() == 0) return {p, 0};
  const Poly hk = lift_to_extension(base, ext, base.pow(base.monic(h), k));
  const Poly res = ext.mod(a, hk);
  std::vector<int> traced(res.c.size());
  for (size_t i = 0; i < res.c.size(); ++i)
    traced[i] = base.field().relative_trace_norm(res.c[i], TraceNorm::trace);
  return additive_char(base, g, h, k, base.from_coeffs(std::move(traced)));
}

void accumulate(CycloInt& acc, const CycloValue& v) {
  if (acc.p != v.p) throw DomainError("mixed cyclotomic orders");
  acc.counts[v.exponent] += 1;
}

CycloInt char_sum(const std::vector<CycloValue>& values) {
  if (values.empty()) return CycloInt(2);
  CycloInt acc(values[0].p);
  for (const CycloValue& v : values) accumulate(acc, v);
  return acc;
}

bool cyclo_equal(const CycloInt& a, const CycloInt& b) {
  if (a.p != b.p) return false;
  const long long shift = a.counts[0] - b.counts[0];
  for (long long j = 0; j < a.p; ++j)
    if (a.counts[j] - b.counts[j] != shift) return false;
  return true;
}

long long cyclo_to_integer(const CycloInt& c) {
  for (long long j = 2; j < c.p; ++j)
    if (c.counts[j] != c.counts[1])
      throw InternalError("cyclotomic sum is not a rational integer");
  return c.p == 1 ? c.counts[0] : c.counts[0] - c.counts[1];
}

CycloInt cyclo_scaled(long long p, int exponent, long long m) {
  CycloInt out(p);
  out.counts[exponent] = m;
  return out;
}

}  // namespace etaq

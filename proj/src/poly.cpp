#include "etaq/poly.hpp"

#include <algorithm>

namespace etaq {

PolyRing::PolyRing(const Field& f, Level lv) : f_(f), lv_(lv), q_(f.size(lv)) {}

Poly PolyRing::from_coeffs(std::vector<int> c) const {
  while (!c.empty() && c.back() == 0) c.pop_back();
  for (int e : c)
    if (e < 0 || e >= q_) throw DomainError("coefficient index out of range");
  return {lv_, std::move(c)};
}

int PolyRing::lead(const Poly& a) const { return a.is_zero() ? 0 : a.c.back(); }

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero() || a.c.back() == 1) return a;
  return mul_scalar(a, f_.inv(lv_, a.c.back()));
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    int x = i < a.c.size() ? a.c[i] : 0;
    int y = i < b.c.size() ? b.c[i] : 0;
    c[i] = f_.add(lv_, x, y);
  }
  return from_coeffs(std::move(c));
}

Poly PolyRing::neg(const Poly& a) const {
  std::vector<int> c = a.c;
  for (int& x : c) x = f_.neg(lv_, x);
  return {lv_, std::move(c)};
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = f_.add(lv_, c[i + j], f_.mul(lv_, a.c[i], b.c[j]));
  }
  return {lv_, std::move(c)};
}

Poly PolyRing::mul_scalar(const Poly& a, int e) const {
  if (e == 0) return zero();
  std::vector<int> c = a.c;
  for (int& x : c) x = f_.mul(lv_, x, e);
  return {lv_, std::move(c)};
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.deg() < b.deg()) return {zero(), a};
  const int linv = f_.inv(lv_, b.c.back());
  std::vector<int> rem = a.c;
  std::vector<int> quo(a.deg() - b.deg() + 1, 0);
  for (int i = a.deg(); i >= b.deg(); --i) {
    int coef = f_.mul(lv_, rem[i], linv);
    quo[i - b.deg()] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= b.deg(); ++j)
      rem[i - b.deg() + j] =
          f_.sub(lv_, rem[i - b.deg() + j], f_.mul(lv_, coef, b.c[j]));
  }
  return {from_coeffs(std::move(quo)), from_coeffs(std::move(rem))};
}

Poly PolyRing::quot_exact(const Poly& a, const Poly& b) const {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalError("division expected to be exact was not");
  return q;
}

Poly PolyRing::pow(const Poly& a, int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  Poly acc = one(), b = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

bool PolyRing::divides(const Poly& d, const Poly& a) const {
  if (d.is_zero()) return a.is_zero();
  return mod(a, d).is_zero();
}

Poly PolyRing::poly_arithmetic(const Poly& a, const Poly& b, PolyOp op) const {
  switch (op) {
    case PolyOp::add: return add(a, b);
    case PolyOp::mul: return mul(a, b);
    case PolyOp::divmod: return divmod(a, b).first;
    case PolyOp::gcd: return gcd(a, b);
  }
  return zero();
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = y;
    y = r;
  }
  return monic(x);
}

Poly PolyRing::power_gcd(const Poly& a, const Poly& b, int k) const {
  if (k < 1) throw DomainError("power gcd needs k >= 1");
  if (a.is_zero() && b.is_zero()) throw DomainError("power gcd of (0, 0)");
  Poly g = gcd(a, b);  // v_P(g) = min(v_P(a), v_P(b)), with v_P(0) = infinity
  if (k == 1) return g;
  Poly d = one();
  for (const auto& [P, e] : factorize(g).factors)
    if (e >= k) d = mul(d, pow(P, e / k));
  return d;
}

const std::vector<Poly>& PolyRing::irreducibles(int deg) const {
  if ((int)sieve_.size() <= deg) sieve_.resize(deg + 1);
  if (deg >= 1 && sieve_[deg].empty()) {
    // Build lower degrees first; a candidate of degree d is irreducible iff
    // no irreducible of degree <= d/2 divides it.
    for (int d = 1; d < deg; ++d) irreducibles(d);
    for (const Poly& cand : monic_by_degree(deg)) {
      bool irred = true;
      for (int d = 1; 2 * d <= deg && irred; ++d)
        for (const Poly& P : sieve_[d])
          if (divides(P, cand)) {
            irred = false;
            break;
          }
      if (irred) sieve_[deg].push_back(cand);
    }
  }
  return sieve_[deg];
}

bool PolyRing::is_irreducible(const Poly& h) const {
  if (h.deg() < 1) return false;
  const Poly m = monic(h);
  for (int d = 1; 2 * d <= m.deg(); ++d)
    for (const Poly& P : irreducibles(d))
      if (divides(P, m)) return false;
  return true;
}

FactoredPoly PolyRing::factorize(const Poly& h) const {
  if (h.is_zero()) throw DomainError("factorize of the zero polynomial");
  uint64_t key = encode(h);
  if (auto it = fcache_.find(key); it != fcache_.end()) return it->second;

  FactoredPoly out;
  out.unit = lead(h);
  Poly rest = monic(h);
  for (int d = 1; rest.deg() >= 1 && 2 * d <= rest.deg();) {
    bool hit = false;
    for (const Poly& P : irreducibles(d)) {
      if (divides(P, rest)) {
        int e = 0;
        while (divides(P, rest)) {
          rest = quot_exact(rest, P);
          ++e;
        }
        out.factors.emplace_back(P, e);
        hit = true;
        if (2 * d > rest.deg()) break;
      }
    }
    if (!hit) ++d;
  }
  if (rest.deg() >= 1) out.factors.emplace_back(rest, 1);  // leftover irreducible

  std::sort(out.factors.begin(), out.factors.end(),
            [this](const auto& a, const auto& b) {
              if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
              return encode(a.first) < encode(b.first);
            });
  fcache_.emplace(key, out);
  return out;
}

std::vector<Poly> PolyRing::monic_divisors(const Poly& h) const {
  if (h.is_zero()) throw DomainError("divisors of the zero polynomial");
  FactoredPoly f = factorize(h);
  std::vector<Poly> out{one()};
  for (const auto& [P, e] : f.factors) {
    std::vector<Poly> next;
    next.reserve(out.size() * (e + 1));
    Poly pe = one();
    for (int i = 0; i <= e; ++i) {
      for (const Poly& d : out) next.push_back(mul(d, pe));
      if (i < e) pe = mul(pe, P);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [this](const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    return encode(a) < encode(b);
  });
  return out;
}

std::pair<Poly, Poly> PolyRing::squarefree_split(const Poly& h) const {
  if (h.is_zero()) throw DomainError("squarefree split of zero");
  Poly hbar = one();
  for (const auto& [P, e] : factorize(h).factors) {
    (void)e;
    hbar = mul(hbar, P);
  }
  return {hbar, quot_exact(monic(h), hbar)};
}

std::vector<Poly> PolyRing::monic_by_degree(int d) const {
  if (d < 0) throw DomainError("negative degree");
  std::vector<Poly> out;
  uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= q_;
  out.reserve(count);
  for (uint64_t r = 0; r < count; ++r) {
    Poly a = decode(r, d);
    a.c.resize(d + 1, 0);
    a.c[d] = 1;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Poly> PolyRing::all_by_max_degree(int d) const {
  if (d < 0) return {zero()};
  uint64_t count = 1;
  for (int i = 0; i <= d; ++i) count *= q_;
  std::vector<Poly> out;
  out.reserve(count);
  for (uint64_t r = 0; r < count; ++r) out.push_back(decode(r, d + 1));
  return out;
}

std::vector<Poly> PolyRing::residue_system(const Poly& h, int k,
                                           ResidueKind kind) const {
  if (h.is_zero()) throw DomainError("residue system modulo zero");
  if (k < 1) throw DomainError("residue system needs k >= 1");
  const Poly hm = monic(h);
  const int m = k * hm.deg();
  std::vector<Poly> out = all_by_max_degree(m - 1);  // m = 0 gives just {0}
  if (kind == ResidueKind::k_reduced) {
    const Poly hk = pow(hm, k);
    std::vector<Poly> red;
    for (Poly& r : out) {
      if (r.is_zero() && m > 0) continue;  // power_gcd(0, h^k) = h != 1
      if (m == 0 || power_gcd(r, hk, k).is_one()) red.push_back(std::move(r));
    }
    return red;
  }
  return out;
}

uint64_t PolyRing::encode(const Poly& a) const {
  uint64_t rank = 0;
  for (size_t i = a.c.size(); i-- > 0;) {
    if (rank > (UINT64_MAX - a.c[i]) / q_)
      throw DomainError("polynomial too large to encode");
    rank = rank * q_ + a.c[i];
  }
  return rank;
}

Poly PolyRing::decode(uint64_t rank, int max_len) const {
  std::vector<int> c(max_len);
  for (int i = 0; i < max_len; ++i) {
    c[i] = int(rank % q_);
    rank /= q_;
  }
  if (rank != 0) throw DomainError("rank exceeds requested length");
  return from_coeffs(std::move(c));
}

namespace {

// Minimal coefficient form: prime-subfield elements render as bare integers,
// anything else as its coordinate list (ext entries recurse to base form).
std::string show_coeff(const Field& f, Level lv, int idx) {
  if (idx < f.p()) return std::to_string(idx);
  FieldElement e = f.to_element(lv, idx);
  std::string s = "[";
  for (size_t i = 0; i < e.coords.size(); ++i) {
    if (i) s += ",";
    s += lv == Level::ext ? show_coeff(f, Level::base, e.coords[i])
                          : std::to_string(e.coords[i]);
  }
  return s + "]";
}

}  // namespace

std::string PolyRing::show(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (int e = a.deg(); e >= 0; --e) {
    const int c = a.c[e];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (e == 0) {
      s += show_coeff(f_, lv_, c);
      continue;
    }
    if (c != 1) {
      s += show_coeff(f_, lv_, c);
      s += "*";
    }
    s += "x";
    if (e >= 2) {
      s += "^";
      s += std::to_string(e);
    }
  }
  return s;
}

Poly lift_to_extension(const PolyRing& base, const PolyRing& ext, const Poly& a) {
  if (a.level != Level::base || base.level() != Level::base ||
      ext.level() != Level::ext)
    throw DomainError("lift expects a base-level polynomial and rings");
  std::vector<int> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i)
    c[i] = base.field().embed(Level::base, Level::ext, a.c[i]);
  return {Level::ext, std::move(c)};
}

Poly frobenius_poly(const PolyRing& ext, const Poly& a) {
  if (ext.level() != Level::ext || a.level != Level::ext)
    throw DomainError("frobenius_poly expects ext-level input");
  std::vector<int> c = a.c;
  for (int& x : c) x = ext.field().frobenius(x);
  return {Level::ext, std::move(c)};
}

}  // namespace etaq

#include "etaq/field.hpp"

#include <algorithm>

namespace etaq {

namespace {

constexpr long long kMaxLevelSize = 1024;

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) {
    r *= b;
    if (r > (1LL << 40)) throw DomainError("field size overflow");
  }
  return r;
}

std::vector<int> idx_to_digits(long long idx, long long radix, int len) {
  std::vector<int> d(len);
  for (int i = 0; i < len; ++i) {
    d[i] = int(idx % radix);
    idx /= radix;
  }
  return d;
}

long long digits_to_idx(const std::vector<int>& d, long long radix) {
  long long idx = 0;
  for (size_t i = d.size(); i-- > 0;) idx = idx * radix + d[i];
  return idx;
}

template <class Mul, class Add>
std::vector<int> conv(const std::vector<int>& a, const std::vector<int>& b,
                      Mul mul, Add add) {
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = add(r[i + j], mul(a[i], b[j]));
  return r;
}

// Reduce r by the monic modulus m (fixed-width coefficient vectors; only used
// during table construction).
template <class Mul, class Sub>
std::vector<int> reduce(std::vector<int> r, const std::vector<int>& m, Mul mul,
                        Sub sub) {
  const size_t d = m.size() - 1;
  while (r.size() > d) {
    int lead = r.back();
    size_t off = r.size() - 1 - d;
    if (lead != 0)
      for (size_t i = 0; i < d; ++i) r[off + i] = sub(r[off + i], mul(lead, m[i]));
    r.pop_back();
  }
  r.resize(d, 0);
  return r;
}

// True when div (monic) divides cand exactly, with schoolbook coefficient ops.
template <class Mul, class Sub>
bool divides_exactly(const std::vector<int>& div, const std::vector<int>& cand,
                     Mul mul, Sub sub) {
  std::vector<int> rem = cand;
  while (rem.size() >= div.size()) {
    int lead = rem.back();
    size_t off = rem.size() - div.size();
    if (lead != 0)
      for (size_t i = 0; i < div.size(); ++i)
        rem[off + i] = sub(rem[off + i], mul(lead, div[i]));
    rem.pop_back();
  }
  return std::all_of(rem.begin(), rem.end(), [](int c) { return c == 0; });
}

}  // namespace

Field::Field(const FieldParams& prm) : p_(prm.p), l_(prm.l), n_(prm.n) {
  if (!is_prime(p_)) throw DomainError("p = " + std::to_string(p_) + " is not prime");
  if (l_ < 1 || n_ < 1) throw DomainError("extension degrees must be >= 1");
  q_ = ipow(p_, l_);
  qn_ = ipow(q_, n_);
  if (q_ > kMaxLevelSize || qn_ > kMaxLevelSize)
    throw DomainError("field level larger than " + std::to_string(kMaxLevelSize) +
                      " elements is beyond desk scale");

  if (!prm.modulus.empty()) {
    if ((int)prm.modulus.size() != l_ + 1)
      throw DomainError("base modulus must have degree l");
    mod_ = prm.modulus;
    for (int& c : mod_) {
      c %= (int)p_;
      if (c < 0) c += (int)p_;
    }
    if (mod_.back() != 1) throw DomainError("base modulus must be monic");
  }
  build_base();

  if (n_ >= 2) {
    if (!prm.ext_modulus.empty()) {
      if ((int)prm.ext_modulus.size() != n_ + 1)
        throw DomainError("ext modulus must have degree n");
      emod_.resize(n_ + 1);
      for (int i = 0; i <= n_; ++i) {
        std::vector<int> coords = prm.ext_modulus[i];
        if ((int)coords.size() == 1 && l_ > 1) coords.resize(l_, 0);
        emod_[i] = from_element({Level::base, coords});
      }
      if (emod_.back() != 1) throw DomainError("ext modulus must be monic");
    }
    build_ext();
  } else if (!prm.ext_modulus.empty()) {
    throw DomainError("ext modulus given but n = 1");
  }
}

long long Field::size(Level lv) const {
  switch (lv) {
    case Level::prime: return p_;
    case Level::base: return q_;
    case Level::ext: check_level(lv); return qn_;
  }
  return 0;
}

void Field::check_level(Level lv) const {
  if (lv == Level::ext && n_ < 2)
    throw DomainError("no field extension configured (n = 1)");
}

// ---------------------------------------------------------------------------
// Base level: F_p[t]/(mod_), index = sum c_i p^i.

std::vector<int> Field::naive_base_mul(const std::vector<int>& a,
                                       const std::vector<int>& b) const {
  const long long p = p_;
  auto mul = [p](int x, int y) { return int((1LL * x * y) % p); };
  auto add = [p](int x, int y) { return int((x + y) % p); };
  auto sub = [p](int x, int y) { return int(((x - y) % p + p) % p); };
  return reduce(conv(a, b, mul, add), mod_, mul, sub);
}

void Field::build_base() {
  const long long p = p_;
  auto mulp = [p](int x, int y) { return int((1LL * x * y) % p); };
  auto subp = [p](int x, int y) { return int(((x - y) % p + p) % p); };

  auto irreducible = [&](const std::vector<int>& cand) {
    for (int d = 1; 2 * d <= l_; ++d)
      for (long long s = 0; s < ipow(p_, d); ++s) {
        std::vector<int> div = idx_to_digits(s, p_, d);
        div.push_back(1);
        if (divides_exactly(div, cand, mulp, subp)) return false;
      }
    return true;
  };

  if (mod_.empty()) {
    for (long long r = 0;; ++r) {
      if (r >= q_) throw InternalError("no irreducible base modulus found");
      std::vector<int> cand = idx_to_digits(r, p_, l_);
      cand.push_back(1);
      if (irreducible(cand)) {
        mod_ = cand;
        break;
      }
    }
  } else if (!irreducible(mod_)) {
    throw DomainError("base modulus is reducible");
  }

  badd_.assign(q_ * q_, 0);
  bmul_.assign(q_ * q_, 0);
  for (long long a = 0; a < q_; ++a) {
    std::vector<int> ca = idx_to_digits(a, p_, l_);
    for (long long b = 0; b < q_; ++b) {
      std::vector<int> cb = idx_to_digits(b, p_, l_);
      std::vector<int> s(l_);
      for (int i = 0; i < l_; ++i) s[i] = int((ca[i] + cb[i]) % p_);
      badd_[a * q_ + b] = int(digits_to_idx(s, p_));
      bmul_[a * q_ + b] = int(digits_to_idx(naive_base_mul(ca, cb), p_));
    }
  }
  binv_.assign(q_, 0);
  for (long long a = 1; a < q_; ++a) {
    long long x = 1;
    for (long long e = 0; e < q_ - 2; ++e) x = bmul_[x * q_ + a];  // a^(q-2)
    if (bmul_[x * q_ + a] != 1) throw InternalError("base inverse failed");
    binv_[a] = int(x);
  }
  btr_.assign(q_, 0);
  for (long long a = 0; a < q_; ++a) {
    long long acc = 0, f = a;  // f runs over a^(p^i)
    for (int i = 0; i < l_; ++i) {
      acc = badd_[acc * q_ + f];
      long long g = 1;
      for (long long e = 0; e < p_; ++e) g = bmul_[g * q_ + f];
      f = g;
    }
    if (acc >= p_) throw InternalError("absolute trace left F_p");
    btr_[a] = int(acc);
  }
}

// ---------------------------------------------------------------------------
// Ext level: F_q[u]/(emod_), coefficients are base indices, index = sum b_i q^i.

std::vector<int> Field::naive_ext_mul(const std::vector<int>& a,
                                      const std::vector<int>& b) const {
  auto mul = [this](int x, int y) { return bmul_[(long long)x * q_ + y]; };
  auto add = [this](int x, int y) { return badd_[(long long)x * q_ + y]; };
  auto sub = [this](int x, int y) {
    return badd_[(long long)x * q_ + neg(Level::base, y)];
  };
  return reduce(conv(a, b, mul, add), emod_, mul, sub);
}

void Field::build_ext() {
  auto mulb = [this](int x, int y) { return bmul_[(long long)x * q_ + y]; };
  auto subb = [this](int x, int y) {
    return badd_[(long long)x * q_ + neg(Level::base, y)];
  };
  auto irreducible = [&](const std::vector<int>& cand) {
    for (int d = 1; 2 * d <= n_; ++d)
      for (long long s = 0; s < ipow(q_, d); ++s) {
        std::vector<int> div = idx_to_digits(s, q_, d);
        div.push_back(1);
        if (divides_exactly(div, cand, mulb, subb)) return false;
      }
    return true;
  };

  if (emod_.empty()) {
    for (long long r = 0;; ++r) {
      if (r >= qn_) throw InternalError("no irreducible ext modulus found");
      std::vector<int> cand = idx_to_digits(r, q_, n_);
      cand.push_back(1);
      if (irreducible(cand)) {
        emod_ = cand;
        break;
      }
    }
  } else if (!irreducible(emod_)) {
    throw DomainError("ext modulus is reducible");
  }

  eadd_.assign(qn_ * qn_, 0);
  emul_.assign(qn_ * qn_, 0);
  for (long long a = 0; a < qn_; ++a) {
    std::vector<int> ca = idx_to_digits(a, q_, n_);
    for (long long b = 0; b < qn_; ++b) {
      std::vector<int> cb = idx_to_digits(b, q_, n_);
      std::vector<int> s(n_);
      for (int i = 0; i < n_; ++i) s[i] = badd_[(long long)ca[i] * q_ + cb[i]];
      eadd_[a * qn_ + b] = int(digits_to_idx(s, q_));
      emul_[a * qn_ + b] = int(digits_to_idx(naive_ext_mul(ca, cb), q_));
    }
  }
  einv_.assign(qn_, 0);
  for (long long a = 1; a < qn_; ++a) {
    long long x = 1;
    for (long long e = 0; e < qn_ - 2; ++e) x = emul_[x * qn_ + a];  // a^(qn-2)
    if (emul_[x * qn_ + a] != 1) throw InternalError("ext inverse failed");
    einv_[a] = int(x);
  }
  efrob_.assign(qn_, 0);
  for (long long a = 0; a < qn_; ++a) {
    long long x = 1;
    for (long long e = 0; e < q_; ++e) x = emul_[x * qn_ + a];  // a^q
    efrob_[a] = int(x);
  }
  etr_.assign(qn_, 0);
  enorm_.assign(qn_, 0);
  etrp_.assign(qn_, 0);
  for (long long a = 0; a < qn_; ++a) {
    long long t = 0, nm = 1, f = a;
    for (int i = 1; i <= n_; ++i) {
      f = efrob_[f];  // sigma^i(a), i = 1..n
      t = eadd_[t * qn_ + f];
      nm = emul_[nm * qn_ + f];
    }
    if (t >= q_ || nm >= q_) throw InternalError("relative trace/norm left F_q");
    etr_[a] = int(t);
    enorm_[a] = int(nm);
    etrp_[a] = btr_[t];
  }
}

// ---------------------------------------------------------------------------

int Field::add(Level lv, int a, int b) const {
  check_level(lv);
  switch (lv) {
    case Level::prime: return int((a + b) % p_);
    case Level::base: return badd_[(long long)a * q_ + b];
    case Level::ext: return eadd_[(long long)a * qn_ + b];
  }
  return 0;
}

int Field::neg(Level lv, int a) const {
  check_level(lv);
  if (lv == Level::prime) return int((p_ - a) % p_);
  if (lv == Level::base) {
    std::vector<int> c = idx_to_digits(a, p_, l_);
    for (int& x : c) x = int((p_ - x) % p_);
    return int(digits_to_idx(c, p_));
  }
  std::vector<int> c = idx_to_digits(a, q_, n_);
  for (int& x : c) x = neg(Level::base, x);
  return int(digits_to_idx(c, q_));
}

int Field::sub(Level lv, int a, int b) const { return add(lv, a, neg(lv, b)); }

int Field::mul(Level lv, int a, int b) const {
  check_level(lv);
  switch (lv) {
    case Level::prime: return int((1LL * a * b) % p_);
    case Level::base: return bmul_[(long long)a * q_ + b];
    case Level::ext: return emul_[(long long)a * qn_ + b];
  }
  return 0;
}

int Field::inv(Level lv, int a) const {
  check_level(lv);
  if (a == 0) throw DomainError("inversion of zero field element");
  switch (lv) {
    case Level::prime: {
      long long x = 1;
      for (long long e = 0; e < p_ - 2; ++e) x = (x * a) % p_;
      return int(x);
    }
    case Level::base: return binv_[a];
    case Level::ext: return einv_[a];
  }
  return 0;
}

int Field::pow(Level lv, int a, long long e) const {
  check_level(lv);
  if (e < 0) return pow(lv, inv(lv, a), -e);
  int acc = 1, b = a;
  while (e > 0) {
    if (e & 1) acc = mul(lv, acc, b);
    b = mul(lv, b, b);
    e >>= 1;
  }
  return acc;
}

int Field::ff_arithmetic(Level lv, int a, long long b, FFOp op) const {
  switch (op) {
    case FFOp::add: return add(lv, a, int(b));
    case FFOp::mul: return mul(lv, a, int(b));
    case FFOp::inv: return inv(lv, a);
    case FFOp::pow: return pow(lv, a, b);
  }
  return 0;
}

int Field::frobenius(int a) const {
  check_level(Level::ext);
  return efrob_[a];
}

int Field::absolute_trace(Level lv, int a) const {
  switch (lv) {
    case Level::prime: return a;
    case Level::base: return btr_[a];
    case Level::ext: check_level(lv); return etrp_[a];
  }
  return 0;
}

int Field::relative_trace_norm(int a, TraceNorm which) const {
  check_level(Level::ext);
  return which == TraceNorm::trace ? etr_[a] : enorm_[a];
}

int Field::embed(Level from, Level to, int a) const {
  check_level(from);
  check_level(to);
  if (a < 0 || a >= size(from)) throw DomainError("element index out of range");
  if (size(from) > size(to)) throw DomainError("cannot embed downward");
  return a;  // subfield elements occupy the low indices at every level
}

std::vector<int> Field::enumerate_elements(Level lv) const {
  check_level(lv);
  std::vector<int> all(size(lv));
  for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  return all;
}

FieldElement Field::to_element(Level lv, int idx) const {
  check_level(lv);
  if (idx < 0 || idx >= size(lv)) throw DomainError("element index out of range");
  switch (lv) {
    case Level::prime: return {lv, {idx}};
    case Level::base: return {lv, idx_to_digits(idx, p_, l_)};
    case Level::ext: return {lv, idx_to_digits(idx, q_, n_)};
  }
  return {lv, {}};
}

int Field::from_element(const FieldElement& e) const {
  check_level(e.level);
  int want = e.level == Level::prime ? 1 : (e.level == Level::base ? l_ : n_);
  if ((int)e.coords.size() != want)
    throw DomainError("coordinate vector has wrong length");
  long long radix = e.level == Level::ext ? q_ : p_;
  for (int c : e.coords)
    if (c < 0 || c >= radix) throw DomainError("coordinate out of range");
  return int(digits_to_idx(e.coords, radix));
}

std::string Field::show(Level lv, int idx) const {
  FieldElement e = to_element(lv, idx);
  if (e.coords.size() == 1) return std::to_string(e.coords[0]);
  std::string s = "[";
  for (size_t i = 0; i < e.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.coords[i]);
  }
  return s + "]";
}

}  // namespace etaq

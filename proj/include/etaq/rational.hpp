#pragma once

#include <cstdint>
#include <string>

#include "etaq/errors.hpp"

namespace etaq {

// Exact rational with 64-bit numerator/denominator in canonical form:
// den > 0 and gcd(|num|, den) = 1. Intermediates are 128-bit; results that do
// not fit back into 64 bits throw (desk-scale values never should).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) { set(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  long long as_integer() const {
    if (den_ != 1) throw DomainError("rational " + str() + " is not an integer");
    return num_;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  // e may be negative; 0^negative throws.
  Rational pow(long long e) const {
    if (e < 0) {
      if (num_ == 0) throw DomainError("zero to a negative power");
      Rational inv;
      inv.set(den_, num_);
      return inv.pow(-e);
    }
    Rational acc(1), b = *this;
    while (e > 0) {
      if (e & 1) acc *= b;
      e >>= 1;
      if (e > 0) b *= b;  // skip the last squaring: it can overflow spuriously
    }
    return acc;
  }

  double to_double() const { return double(num_) / double(den_); }

  // "n" when integral, otherwise "n/d".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  void set(i128 n, i128 d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (!fits64(n) || !fits64(d)) throw DomainError("rational overflow");
    num_ = (long long)n;
    den_ = (long long)d;
  }

  static Rational from128(i128 n, i128 d) {
    Rational r;
    r.set(n, d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  static bool fits64(i128 v) {
    return v >= i128(INT64_MIN) && v <= i128(INT64_MAX);
  }

  long long num_, den_;
};

}  // namespace etaq

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "pvforms/errors.hpp"

namespace pvforms {

// Exact rational number with a 64-bit numerator and denominator.
// Always normalized: gcd(num, den) == 1 and den > 0. Intermediate
// products go through __int128 and throw on narrowing overflow, so
// symbolic results are either exact or an error, never silently wrong.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0)
      throw DomainError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num_ = g ? n / g : n;
    den_ = g ? d / g : d;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool negative() const { return num_ < 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator-(const Rational &a) {
    return make(-static_cast<__int128>(a.num_), a.den_);
  }
  friend Rational operator+(const Rational &a, const Rational &b) {
    return make(w(a.num_) * b.den_ + w(b.num_) * a.den_, w(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational &a, const Rational &b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    return make(w(a.num_) * b.num_, w(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    if (b.num_ == 0)
      throw DomainError("rational division by zero");
    return make(w(a.num_) * b.den_, w(a.den_) * b.num_);
  }

  Rational &operator+=(const Rational &b) { return *this = *this + b; }
  Rational &operator-=(const Rational &b) { return *this = *this - b; }
  Rational &operator*=(const Rational &b) { return *this = *this * b; }
  Rational &operator/=(const Rational &b) { return *this = *this / b; }

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational &a, const Rational &b) {
    return !(a == b);
  }
  friend bool operator<(const Rational &a, const Rational &b) {
    return w(a.num_) * b.den_ < w(b.num_) * a.den_;
  }

  // "3", "-3" or "3/2".
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1)
      s += "/" + std::to_string(den_);
    return s;
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.str();
  }

private:
  static __int128 w(std::int64_t x) { return static_cast<__int128>(x); }

  static Rational make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g != 0) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw Error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace pvforms

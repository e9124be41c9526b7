#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>

#include "mathrules/error.hpp"

namespace mathrules {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Invariants: denominator > 0 and
/// gcd(|numerator|, denominator) == 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  /// True when representable with at most two decimal places.
  bool is_two_place_decimal() const { return 100 % den_ == 0; }

  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, tag{}); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) raise(errc::division_by_zero, "rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  /// Exact integer power; exponent may be negative.
  Rational pow(long long e) const {
    if (e < 0) {
      if (num_ == 0) raise(errc::zero_to_negative_power, "0 raised to a negative power");
      return (Rational(1) / *this).pow(-e);
    }
    Rational base = *this, acc(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// "p/q" form, or just "p" for integers.
  std::string to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

  /// Decimal rendering for two-place values: "12.51", "-0.5", "3.0".
  /// Trailing zeros in the fraction are trimmed, but at least one
  /// fractional digit is kept so the token re-parses as a decimal.
  std::string to_decimal_string() const {
    if (!is_two_place_decimal())
      raise(errc::illegal_decimal, "not representable with two decimal places: " + to_string());
    BigInt scaled = num_ * (100 / den_);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    BigInt ip = scaled / 100, fp = scaled % 100;
    std::string frac;
    if (fp % 10 == 0)
      frac = BigInt(fp / 10).str();
    else {
      frac = fp.str();
      if (frac.size() == 1) frac = "0" + frac;
    }
    return (neg ? "-" : "") + ip.str() + "." + frac;
  }

  /// Parses "123", "-4.25". Rejects more than two fractional digits.
  static Rational from_decimal_string(const std::string& text) {
    std::string s = text;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    std::string ip, fp;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) ip += s[i];
    if (i < s.size() && s[i] == '.') {
      for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) fp += s[i];
      if (fp.empty()) raise(errc::illegal_decimal, "missing fractional digits in: " + text);
    }
    if (ip.empty() || i != s.size())
      raise(errc::illegal_decimal, "not a numeric literal: " + text);
    if (fp.size() > 2)
      raise(errc::illegal_decimal, "more than two decimal places in: " + text);
    BigInt num = 0, den = 1;
    for (char d : ip) num = num * 10 + (d - '0');
    for (char d : fp) {
      num = num * 10 + (d - '0');
      den *= 10;
    }
    if (neg) num = -num;
    return Rational(num, den);
  }

  /// Exact square root when the value is a perfect square of a rational.
  bool sqrt_exact(Rational& out) const {
    if (num_ < 0) return false;
    BigInt rn = boost::multiprecision::sqrt(num_), rd = boost::multiprecision::sqrt(den_);
    if (rn * rn != num_ || rd * rd != den_) return false;
    out = Rational(rn, rd, tag{});
    return true;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  struct tag {};
  Rational(BigInt n, BigInt d, tag) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) raise(errc::division_by_zero, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace mathrules

#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers over arbitrary-precision integers.
 *
 * Values are always kept reduced with a positive denominator, and zero is
 * represented as 0/1, so two rationals are equal iff their fields are.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "infodilog/errors.hpp"

namespace infodilog {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : num_(n) {}  // NOLINT: implicit by design of a number type

  explicit Rational(BigInt n) : num_(std::move(n)) {}

  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    reduce();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational inv() const {
    if (is_zero()) throw DomainError("inverse of zero");
    Rational r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_ < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
    return r;
  }

  Rational abs() const {
    Rational r = *this;
    if (r.num_ < 0) r.num_ = -r.num_;
    return r;
  }

  // Nearest double (correctly rounded for operands below 2^53).
  double to_double() const {
    constexpr int kExact = std::numeric_limits<double>::digits;
    if (boost::multiprecision::msb(den_) < kExact &&
        (num_ == 0 || boost::multiprecision::msb(abs_big(num_)) < kExact)) {
      return num_.convert_to<double>() / den_.convert_to<double>();
    }
    boost::multiprecision::cpp_rational q(num_, den_);
    return q.convert_to<double>();
  }

  // Exact value of a finite double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw InputError("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational();
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    constexpr int kBits = std::numeric_limits<double>::digits;
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, kBits));
    exp -= kBits;
    BigInt n(scaled);
    if (exp >= 0) return Rational(BigInt(n << exp));
    BigInt d(1);
    d <<= -exp;
    return Rational(std::move(n), std::move(d));
  }

  // Accepts `[+-]int`, `[+-]int/[+-]int` and `[+-]digits.digits`.
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw InputError("malformed rational '" + std::string(text) + "'");
    };
    std::string_view s = trim(text);
    if (s.empty()) return fail();

    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
      auto n = parse_integer(s.substr(0, slash));
      auto d = parse_integer(s.substr(slash + 1));
      if (!n || !d) return fail();
      if (*d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
      return Rational(std::move(*n), std::move(*d));
    }

    const auto dot = s.find('.');
    if (dot == std::string_view::npos) {
      auto n = parse_integer(s);
      if (!n) return fail();
      return Rational(std::move(*n));
    }

    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) return fail();
    if (!all_digits(whole) || !all_digits(frac)) return fail();
    BigInt n = from_digits(std::string(whole) + std::string(frac));
    BigInt d = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    if (negative) n = -n;
    return Rational(std::move(n), std::move(d));
  }

  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    reduce();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator/=(const Rational& o) { return *this *= o.inv(); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  BigInt num_{0};
  BigInt den_{1};

  void reduce() {
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  static bool all_digits(std::string_view s) {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  static std::optional<BigInt> parse_integer(std::string_view s) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty() || !all_digits(s)) return std::nullopt;
    BigInt n = from_digits(s);
    if (negative) n = -n;
    return n;
  }

  // cpp_int reads a leading zero as an octal prefix.
  static BigInt from_digits(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    if (digits.empty()) return BigInt(0);
    return BigInt(std::string(digits));
  }
};

}  // namespace infodilog

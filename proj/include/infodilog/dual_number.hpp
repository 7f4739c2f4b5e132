#pragma once

// Dual numbers re + eps*t over the rationals, with t^2 = 0.

#include <ostream>
#include <string>

#include "infodilog/rational.hpp"

namespace infodilog {

class DualNumber {
 public:
  DualNumber() = default;
  DualNumber(Rational re, Rational eps = Rational()) : re_(std::move(re)), eps_(std::move(eps)) {}  // NOLINT

  static DualNumber t() { return DualNumber(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& eps() const { return eps_; }

  bool is_invertible() const { return !re_.is_zero(); }

  DualNumber inv() const {
    if (!is_invertible()) {
      throw DomainError("dual number " + str() + " has zero real part and is not invertible");
    }
    const Rational r = re_.inv();
    return DualNumber(r, -(r * r * eps_));
  }

  /// "2 - 2t", "3/2 + 0t".
  std::string str() const {
    if (eps_.sign() < 0) return re_.str() + " - " + (-eps_).str() + "t";
    return re_.str() + " + " + eps_.str() + "t";
  }

  DualNumber operator-() const { return DualNumber(-re_, -eps_); }

  DualNumber& operator+=(const DualNumber& o) {
    re_ += o.re_;
    eps_ += o.eps_;
    return *this;
  }
  DualNumber& operator-=(const DualNumber& o) {
    re_ -= o.re_;
    eps_ -= o.eps_;
    return *this;
  }
  DualNumber& operator*=(const DualNumber& o) {
    eps_ = re_ * o.eps_ + eps_ * o.re_;
    re_ *= o.re_;
    return *this;
  }
  DualNumber& operator/=(const DualNumber& o) { return *this *= o.inv(); }

  friend DualNumber operator+(DualNumber a, const DualNumber& b) { return a += b; }
  friend DualNumber operator-(DualNumber a, const DualNumber& b) { return a -= b; }
  friend DualNumber operator*(DualNumber a, const DualNumber& b) { return a *= b; }
  friend DualNumber operator/(DualNumber a, const DualNumber& b) { return a /= b; }

  friend bool operator==(const DualNumber& a, const DualNumber& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const DualNumber& d) { return os << d.str(); }

 private:
  Rational re_;
  Rational eps_;
};

inline DualNumber dual_inv(const DualNumber& d) { return d.inv(); }

/// The lift a + a(1-a)t of a in Q \ {0, 1}.
inline DualNumber dual_bracket(const Rational& a) {
  if (a.is_zero() || a.is_one()) {
    throw DomainError("bracket lift requires a outside {0, 1}, got " + a.str());
  }
  return DualNumber(a, a * (Rational(1) - a));
}

/// lambda * (b0 + b1 t) = b0 + lambda b1 t, for lambda != 0.
inline DualNumber star_action(const Rational& lambda, const DualNumber& d) {
  if (lambda.is_zero()) throw DomainError("star action by zero scalar");
  return DualNumber(d.re(), lambda * d.eps());
}

}  // namespace infodilog

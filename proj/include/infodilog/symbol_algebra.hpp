#pragma once

/**
 * @file symbol_algebra.hpp
 * @brief Formal combinations of two-argument symbols <a,b> and bracket
 * symbols [a] over Q, and their images in Q* (x)_Z Q.
 *
 * Zero-testing never rewrites with the defining relations. Instead every
 * expression is pushed into Q* (x) Q, where an element has a unique
 * prime-indexed form: x (x) y = sum_p v_p(x) y * (p (x) 1). Torsion in Q*
 * dies there, so signs drop out: (-1) (x) y = 0.
 *
 * A non-empty image proves an expression nonzero. An empty image proves it
 * zero provided the map [a] -> a (x) a + (1-a) (x) (1-a) is injective on
 * the space of bracket symbols, which is assumed and not checked.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "infodilog/binary_entropy.hpp"
#include "infodilog/factorize.hpp"
#include "infodilog/rational.hpp"

namespace infodilog {

/// Element of Q* (x)_Z Q as a finitely supported map prime -> rational.
class TensorCanonical {
 public:
  using Map = std::map<BigInt, Rational>;

  TensorCanonical() = default;

  /// Adds unit (x) scalar. unit must be nonzero.
  void add_pure(const Rational& unit, const Rational& scalar) {
    if (scalar.is_zero()) return;
    for (const auto& [p, e] : factorize(unit).exponents) accumulate(p, Rational(e) * scalar);
  }

  const Map& primes() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  TensorCanonical& operator+=(const TensorCanonical& o) {
    for (const auto& [p, c] : o.coeffs_) accumulate(p, c);
    return *this;
  }
  TensorCanonical& operator-=(const TensorCanonical& o) {
    for (const auto& [p, c] : o.coeffs_) accumulate(p, -c);
    return *this;
  }
  TensorCanonical& operator*=(const Rational& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [p, c] : coeffs_) c *= s;
    return *this;
  }

  friend TensorCanonical operator+(TensorCanonical a, const TensorCanonical& b) { return a += b; }
  friend TensorCanonical operator-(TensorCanonical a, const TensorCanonical& b) { return a -= b; }
  friend TensorCanonical operator*(const Rational& s, TensorCanonical a) { return a *= s; }
  friend bool operator==(const TensorCanonical&, const TensorCanonical&) = default;

  std::string str() const {
    if (coeffs_.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& [p, c] : coeffs_) {
      if (!first) out += ", ";
      first = false;
      out += p.str() + ": " + c.str();
    }
    return out + "}";
  }

 private:
  Map coeffs_;

  void accumulate(const BigInt& p, const Rational& c) {
    auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
};

/// Formal pair b/a ^ b/(1-a) in k+ wedge k+. Carries no equality semantics:
/// over Q the exterior square of Q is the zero group.
struct WedgePair {
  Rational first;
  Rational second;
};

/// Combination of symbols <a,b>. Degenerate symbols (a = 0, b = 0,
/// a + b = 0) are zero and never stored; equal (a,b) keys are merged.
class JExpr {
 public:
  using Key = std::pair<Rational, Rational>;
  using Map = std::map<Key, Rational>;

  JExpr() = default;

  static bool degenerate(const Rational& a, const Rational& b) {
    return a.is_zero() || b.is_zero() || (a + b).is_zero();
  }

  JExpr& add_term(const Rational& coeff, const Rational& a, const Rational& b) {
    if (coeff.is_zero() || degenerate(a, b)) return *this;
    auto [it, inserted] = terms_.try_emplace(Key{a, b}, coeff);
    if (!inserted) it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
    return *this;
  }

  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  JExpr& operator+=(const JExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
    return *this;
  }
  JExpr& operator-=(const JExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(-c, k.first, k.second);
    return *this;
  }
  JExpr& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend JExpr operator+(JExpr a, const JExpr& b) { return a += b; }
  friend JExpr operator-(JExpr a, const JExpr& b) { return a -= b; }
  friend JExpr operator*(const Rational& s, JExpr a) { return a *= s; }
  friend bool operator==(const JExpr&, const JExpr&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str() + "<" + k.first.str() + "," + k.second.str() + ">";
    }
    return out;
  }

 private:
  Map terms_;
};

/// Combination of bracket symbols [a], a != 0. [1] is zero and dropped.
class BetaExpr {
 public:
  using Map = std::map<Rational, Rational>;

  BetaExpr() = default;

  BetaExpr& add_term(const Rational& coeff, const Rational& a) {
    if (a.is_zero()) throw DomainError("bracket symbol [0] is undefined: argument must be invertible");
    if (coeff.is_zero() || a.is_one()) return *this;
    auto [it, inserted] = terms_.try_emplace(a, coeff);
    if (!inserted) it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
    return *this;
  }

  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  BetaExpr& operator+=(const BetaExpr& o) {
    for (const auto& [a, c] : o.terms_) add_term(c, a);
    return *this;
  }
  BetaExpr& operator-=(const BetaExpr& o) {
    for (const auto& [a, c] : o.terms_) add_term(-c, a);
    return *this;
  }
  BetaExpr& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  friend BetaExpr operator+(BetaExpr a, const BetaExpr& b) { return a += b; }
  friend BetaExpr operator-(BetaExpr a, const BetaExpr& b) { return a -= b; }
  friend BetaExpr operator*(const Rational& s, BetaExpr a) { return a *= s; }
  friend bool operator==(const BetaExpr&, const BetaExpr&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [a, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str() + "[" + a.str() + "]";
    }
    return out;
  }

 private:
  Map terms_;
};

inline JExpr j_symbol(const Rational& a, const Rational& b) {
  JExpr e;
  e.add_term(Rational(1), a, b);
  return e;
}

inline BetaExpr beta_symbol(const Rational& a, const Rational& coeff = Rational(1)) {
  BetaExpr e;
  e.add_term(coeff, a);
  return e;
}

/// <a,b> -> (a+b)[a/(a+b)].
inline BetaExpr j_to_beta(const JExpr& e) {
  BetaExpr out;
  for (const auto& [k, c] : e.terms()) {
    const Rational sum = k.first + k.second;
    out.add_term(c * sum, k.first / sum);
  }
  return out;
}

/// [a] -> <a, 1-a>.
inline JExpr beta_to_j(const BetaExpr& e) {
  JExpr out;
  for (const auto& [a, c] : e.terms()) out.add_term(c, a, Rational(1) - a);
  return out;
}

/// D(c[a]) = a (x) ca + (1-a) (x) c(1-a).
inline TensorCanonical d_map(const BetaExpr& e) {
  TensorCanonical out;
  for (const auto& [a, c] : e.terms()) {
    const Rational one_minus = Rational(1) - a;
    out.add_pure(a, c * a);
    out.add_pure(one_minus, c * one_minus);
  }
  return out;
}

/// chi(c<a,b>) = (a/(a+b)) (x) ca + (b/(a+b)) (x) cb; equals d_map o j_to_beta.
inline TensorCanonical chi(const JExpr& e) {
  TensorCanonical out;
  for (const auto& [k, c] : e.terms()) {
    const auto& [a, b] = k;
    const Rational sum = a + b;
    out.add_pure(a / sum, c * a);
    out.add_pure(b / sum, c * b);
  }
  return out;
}

/// Exact zero test. Sound for `false` unconditionally; `true` relies on the
/// injectivity of the bracket map into Q* (x) Q.
inline bool is_zero(const JExpr& e) { return chi(e).empty(); }
inline bool is_zero_beta(const BetaExpr& e) { return d_map(e).empty(); }

namespace detail {
inline void require_off_unit(const Rational& a, const char* what) {
  if (a.is_zero() || a.is_one()) {
    throw DomainError(std::string(what) + " requires a outside {0, 1}, got " + a.str());
  }
}
}  // namespace detail

/// mu({a + b eps} - {a}) = b/a ^ b/(1-a), kept formal.
inline WedgePair mu(const Rational& a, const Rational& b) {
  detail::require_off_unit(a, "mu");
  return WedgePair{b / a, b / (Rational(1) - a)};
}

/// rho({a + b eps} - {a}) = a (x) b/(1-a) + (1-a) (x) b/a.
inline TensorCanonical rho(const Rational& a, const Rational& b) {
  detail::require_off_unit(a, "rho");
  const Rational one_minus = Rational(1) - a;
  TensorCanonical out;
  out.add_pure(a, b / one_minus);
  out.add_pure(one_minus, b / a);
  return out;
}

/// Real value of a symbol combination: <a,b> = (a+b) H(a/(a+b)).
inline double eval_entropy_real(const JExpr& e, const LogBase& base = {}) {
  double total = 0.0;
  for (const auto& [k, c] : e.terms()) {
    const Rational sum = k.first + k.second;
    total += c.to_double() * sum.to_double() * h_extended((k.first / sum).to_double(), base);
  }
  return total;
}

/// Real value of a bracket combination: [a] = <a, 1-a> = H(a).
inline double eval_entropy_real(const BetaExpr& e, const LogBase& base = {}) {
  double total = 0.0;
  for (const auto& [a, c] : e.terms()) total += c.to_double() * h_extended(a.to_double(), base);
  return total;
}

}  // namespace infodilog

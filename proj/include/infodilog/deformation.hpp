#pragma once

/**
 * @file deformation.hpp
 * @brief Five-term symbols over Q and over the dual numbers Q[t]/(t^2), and
 * their linearization to the four-term infinitesimal relation in brackets.
 *
 * Tangent elements {a + bt} - {a} are stored through the isomorphism onto
 * bracket combinations: {a + bt} - {a} <-> (b / (a(1-a))) [a]. Contributions
 * at one base point add in b, so the quotient by the additivity relations
 * needs no separate representation.
 */

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "infodilog/dual_number.hpp"
#include "infodilog/errors.hpp"
#include "infodilog/rational.hpp"
#include "infodilog/symbol_algebra.hpp"

namespace infodilog {

namespace detail {
inline const Rational& base_point(const Rational& z) { return z; }
inline const Rational& base_point(const DualNumber& z) { return z.re(); }

inline std::string text_of(const Rational& z) { return z.str(); }
inline std::string text_of(const DualNumber& z) { return z.str(); }
}  // namespace detail

/// z and 1 - z are invertible. For a dual number that depends on re only.
template <class Ring>
bool admissible(const Ring& z) {
  const Rational& c = detail::base_point(z);
  return !c.is_zero() && !c.is_one();
}

/// Optional rewriting of each symbol as it is added. Off by default.
enum class SymbolRewrite {
  none,
  inversion,   // {z} -> -{1/z}
  reflection,  // {z} -> {1/(1-z)}
};

/// Ordered formal combination of symbols {z}. Terms are kept as entered so
/// that two expressions can be compared term by term.
template <class Ring>
class PExpr {
 public:
  struct Term {
    Rational coeff;
    Ring arg;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit PExpr(SymbolRewrite rewrite = SymbolRewrite::none) : rewrite_(rewrite) {}

  /// Appends coeff * {z}. Throws DomainError unless z is admissible.
  PExpr& add_term(const Rational& coeff, const Ring& z, const std::string& label = "symbol") {
    if (!admissible(z)) {
      throw DomainError(label + " argument " + detail::text_of(z) + " is degenerate: z and 1 - z must be invertible");
    }
    return add_term_unchecked(coeff, z);
  }

  /// Appends without the admissibility check, e.g. for constant dual symbols
  /// sitting on 0 or 1 that only need to be linearized away.
  PExpr& add_term_unchecked(const Rational& coeff, const Ring& z) {
    const Ring one(Rational(1));
    switch (rewrite_) {
      case SymbolRewrite::none: terms_.push_back({coeff, z}); break;
      case SymbolRewrite::inversion: terms_.push_back({-coeff, one / z}); break;
      case SymbolRewrite::reflection: terms_.push_back({coeff, one / (one - z)}); break;
    }
    return *this;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  SymbolRewrite rewrite() const { return rewrite_; }

  PExpr& operator+=(const PExpr& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }
  friend PExpr operator+(PExpr a, const PExpr& b) { return a += b; }
  friend bool operator==(const PExpr& a, const PExpr& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += t.coeff.str() + "{" + detail::text_of(t.arg) + "}";
    }
    return out;
  }

 private:
  std::vector<Term> terms_;
  SymbolRewrite rewrite_;
};

/// {z1} - {z2} + {z2/z1} - {(1-z2)/(1-z1)} + {(1-z2) z1 / ((1-z1) z2)}.
template <class Ring>
PExpr<Ring> five_term(const Ring& z1, const Ring& z2, SymbolRewrite rewrite = SymbolRewrite::none) {
  const Ring one(Rational(1));
  PExpr<Ring> e(rewrite);
  e.add_term(Rational(1), z1, "first term z1:");
  e.add_term(Rational(-1), z2, "second term z2:");
  e.add_term(Rational(1), z2 / z1, "third term z2/z1:");
  e.add_term(Rational(-1), (one - z2) / (one - z1), "fourth term (1-z2)/(1-z1):");
  e.add_term(Rational(1), ((one - z2) * z1) / ((one - z1) * z2), "fifth term (1-z2)z1/((1-z1)z2):");
  return e;
}

namespace detail {
inline void require_deformable(const Rational& a, const Rational& b) {
  if (a.is_zero() || a.is_one() || b.is_zero() || b.is_one()) {
    throw DomainError("deformation requires a, b outside {0, 1}, got a = " + a.str() + ", b = " + b.str());
  }
  if (a == b) throw DomainError("deformation requires a != b, got a = b = " + a.str());
}
}  // namespace detail

/// The five-term element at z1 = <a>, z2 = <b>.
inline PExpr<DualNumber> five_term_dual(const Rational& a, const Rational& b) {
  detail::require_deformable(a, b);
  return five_term(dual_bracket(a), dual_bracket(b));
}

/// {c + dt} -> (d / (c(1-c))) [c]; symbols with d = 0 contribute nothing.
inline BetaExpr linearize(const PExpr<DualNumber>& e) {
  BetaExpr out;
  for (const auto& [coeff, z] : e.terms()) {
    if (z.eps().is_zero()) continue;
    const Rational& c = z.re();
    if (c.is_zero() || c.is_one()) {
      throw DomainError("cannot linearize {" + z.str() + "}: base point must lie outside {0, 1}");
    }
    out.add_term(coeff * z.eps() / (c * (Rational(1) - c)), c);
  }
  return out;
}

/// [a] - [b] + a[b/a] + (1-a)[(1-b)/(1-a)].
inline BetaExpr four_term_element(const Rational& a, const Rational& b) {
  detail::require_deformable(a, b);
  const Rational one(1);
  BetaExpr e;
  e.add_term(one, a);
  e.add_term(-one, b);
  e.add_term(a, b / a);
  e.add_term(one - a, (one - b) / (one - a));
  return e;
}

inline BetaExpr deform_five_term(const Rational& a, const Rational& b) { return linearize(five_term_dual(a, b)); }

/// Tangent element in bracket coordinates.
class TPElem {
 public:
  TPElem() = default;
  explicit TPElem(BetaExpr e) : e_(std::move(e)) {}

  const BetaExpr& canonical() const { return e_; }
  bool empty() const { return e_.empty(); }

  TPElem& operator+=(const TPElem& o) {
    e_ += o.e_;
    return *this;
  }
  TPElem& operator-=(const TPElem& o) {
    e_ -= o.e_;
    return *this;
  }
  friend TPElem operator+(TPElem a, const TPElem& b) { return a += b; }
  friend TPElem operator-(TPElem a, const TPElem& b) { return a -= b; }
  friend TPElem operator*(const Rational& s, TPElem a) {
    a.e_ *= s;
    return a;
  }
  friend bool operator==(const TPElem&, const TPElem&) = default;

  std::string str() const { return e_.str(); }

 private:
  BetaExpr e_;
};

/// sigma({a + bt}) = {a + bt} - {a}, in bracket coordinates (b/(a(1-a)))[a].
inline TPElem sigma_section(const Rational& a, const Rational& b) {
  if (a.is_zero() || a.is_one()) throw DomainError("sigma requires a outside {0, 1}, got " + a.str());
  BetaExpr e;
  e.add_term(b / (a * (Rational(1) - a)), a);
  return TPElem(std::move(e));
}

struct DualLemmaReport {
  bool quot = false;               // <b>/<a> = a * <b/a>
  bool diff_quot = false;          // (1-<b>)/(1-<a>) = (a-1) * <(1-b)/(1-a)>
  bool add_mult_inv = false;       // 1 - <x>^-1 = (1 - x^-1)(1 - t), x = a and x = b
  bool add_mult_inv_quot = false;  // (1-<b>^-1)/(1-<a>^-1) = (1-b^-1)/(1-a^-1)

  bool all() const { return quot && diff_quot && add_mult_inv && add_mult_inv_quot; }
};

inline DualLemmaReport check_dual_lemmas(const Rational& a, const Rational& b) {
  detail::require_deformable(a, b);
  const Rational one(1);
  const DualNumber ua = dual_bracket(a);
  const DualNumber ub = dual_bracket(b);
  const DualNumber d_one(one);
  const DualNumber one_minus_t(one, -one);

  DualLemmaReport r;
  r.quot = ub / ua == star_action(a, dual_bracket(b / a));
  r.diff_quot = (d_one - ub) / (d_one - ua) == star_action(a - one, dual_bracket((one - b) / (one - a)));
  r.add_mult_inv = d_one - ua.inv() == DualNumber(one - a.inv()) * one_minus_t &&
                   d_one - ub.inv() == DualNumber(one - b.inv()) * one_minus_t;
  r.add_mult_inv_quot = (d_one - ub.inv()) / (d_one - ua.inv()) == DualNumber((one - b.inv()) / (one - a.inv()));
  return r;
}

/// Everything checked for one (a, b).
struct DeformationReport {
  Rational a;
  Rational b;
  DualLemmaReport lemmas;
  PExpr<DualNumber> five_term_args;
  BetaExpr linearized;
  BetaExpr four_term;
  bool termwise_equal = false;
  bool oracle_zero = false;

  bool passed() const { return lemmas.all() && termwise_equal && oracle_zero; }
};

inline DeformationReport deformation_report(const Rational& a, const Rational& b) {
  DeformationReport r;
  r.a = a;
  r.b = b;
  r.lemmas = check_dual_lemmas(a, b);
  r.five_term_args = five_term_dual(a, b);
  r.linearized = linearize(r.five_term_args);
  r.four_term = four_term_element(a, b);
  r.termwise_equal = r.linearized == r.four_term;
  r.oracle_zero = is_zero_beta(r.linearized);
  return r;
}

}  // namespace infodilog

#pragma once

/**
 * @file entropy.hpp
 * @brief Shannon, joint and conditional entropy, mutual information, and the
 * functional identities of the binary entropy function.
 *
 * Decompositions into <a,b> symbols take exact rational labels; overloads
 * that take floating-point distributions convert each probability to the
 * rational it exactly represents.
 */

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infodilog/binary_entropy.hpp"
#include "infodilog/errors.hpp"
#include "infodilog/rational.hpp"
#include "infodilog/symbol_algebra.hpp"

namespace infodilog {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kSingularGuard = 1e-9;

/// strict: every probability in (0,1). lenient: [0,1].
enum class Strictness { strict, lenient };

class Distribution {
 public:
  explicit Distribution(std::vector<double> probs, Strictness mode = Strictness::lenient)
      : probs_(std::move(probs)) {
    if (probs_.empty()) throw InputError("distribution must have at least one outcome");
    double sum = 0.0;
    for (double p : probs_) {
      // Marginals summed in floating point may exceed 1 by a rounding error.
      const bool ok = mode == Strictness::strict ? (p > 0.0 && p < 1.0)
                                                 : (p >= 0.0 && p <= 1.0 + kNormalizationTolerance);
      if (!ok || !std::isfinite(p)) {
        throw InputError("probability " + std::to_string(p) + " out of range");
      }
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kNormalizationTolerance) {
      throw InputError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
  }

  static Distribution from_rationals(std::span<const Rational> probs,
                                     Strictness mode = Strictness::lenient) {
    std::vector<double> v;
    v.reserve(probs.size());
    for (const auto& p : probs) v.push_back(p.to_double());
    return Distribution(std::move(v), mode);
  }

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// p(i,j) = P(X = x_i, Y = y_j); rows are X outcomes, columns Y outcomes.
class JointTable {
 public:
  explicit JointTable(std::vector<std::vector<double>> p) : p_(std::move(p)) {
    if (p_.empty() || p_.front().empty()) throw InputError("joint table must be non-empty");
    const std::size_t cols = p_.front().size();
    double sum = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (p_[i].size() != cols) {
        throw InputError("joint table row " + std::to_string(i) + " has " +
                         std::to_string(p_[i].size()) + " entries, expected " +
                         std::to_string(cols));
      }
      for (double v : p_[i]) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("joint table entries must be >= 0");
        sum += v;
      }
    }
    if (std::fabs(sum - 1.0) > kNormalizationTolerance) {
      throw InputError("joint table sums to " + std::to_string(sum) + ", not 1");
    }
  }

  /// A u-variable joint distribution laid out as one flat row.
  static JointTable flattened(std::span<const double> probs) {
    return JointTable({std::vector<double>(probs.begin(), probs.end())});
  }

  std::size_t rows() const { return p_.size(); }
  std::size_t cols() const { return p_.front().size(); }
  double operator()(std::size_t i, std::size_t j) const { return p_[i][j]; }

  std::vector<double> row_marginal() const {
    std::vector<double> out(rows(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) out[i] += p_[i][j];
    return out;
  }
  std::vector<double> col_marginal() const {
    std::vector<double> out(cols(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) out[j] += p_[i][j];
    return out;
  }

 private:
  std::vector<std::vector<double>> p_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {
inline double plogp_sum(std::span<const double> ps) {
  double h = 0.0;
  for (double p : ps) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}
}  // namespace detail

inline double shannon(const Distribution& d, const LogBase& base = {}) {
  return base.from_nats(detail::plogp_sum(d.probs()));
}

/// H = sum_j <p_1 + ... + p_{j-1}, p_j>, one symbol per merge.
inline JExpr chain_decompose(std::span<const Rational> probs) {
  if (probs.size() < 2) throw InputError("chain decomposition needs at least two outcomes");
  JExpr out;
  Rational running = probs[0];
  for (std::size_t j = 1; j < probs.size(); ++j) {
    out.add_term(Rational(1), running, probs[j]);
    running += probs[j];
  }
  return out;
}

inline JExpr chain_decompose(const Distribution& d) {
  std::vector<Rational> exact;
  exact.reserve(d.size());
  for (double p : d.probs()) exact.push_back(Rational::from_double(p));
  return chain_decompose(exact);
}

inline double joint_entropy(const JointTable& t, const LogBase& base = {}) {
  double h = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double p = t(i, j);
      if (p > 0.0) h -= p * std::log(p);
    }
  return base.from_nats(h);
}

/// Which cells merge first in a joint decomposition.
/// by_columns: each column's cells down the rows, then the column sums.
/// by_rows: each row's cells across the columns, then the row sums.
enum class JointGrouping { by_columns, by_rows };

/// Joint entropy as a sum of symbols. The default grouping reproduces the
/// 2x2 form <p11,p21> + <p12,p22> + <p11+p21, p12+p22> term for term.
inline JExpr joint_decompose(const RationalMatrix& p, JointGrouping grouping = JointGrouping::by_columns) {
  if (p.empty() || p.front().empty()) throw InputError("joint table must be non-empty");
  const std::size_t n = p.size();
  const std::size_t m = p.front().size();
  for (const auto& row : p) {
    if (row.size() != m) throw InputError("joint table rows must have equal length");
  }
  const bool cols_first = grouping == JointGrouping::by_columns;
  const std::size_t outer = cols_first ? m : n;
  const std::size_t inner = cols_first ? n : m;
  auto at = [&](std::size_t o, std::size_t k) -> const Rational& { return cols_first ? p[k][o] : p[o][k]; };

  JExpr out;
  std::vector<Rational> group_sums;
  group_sums.reserve(outer);
  for (std::size_t o = 0; o < outer; ++o) {
    Rational running = at(o, 0);
    for (std::size_t k = 1; k < inner; ++k) {
      out.add_term(Rational(1), running, at(o, k));
      running += at(o, k);
    }
    group_sums.push_back(std::move(running));
  }
  if (group_sums.size() >= 2) out += chain_decompose(group_sums);
  return out;
}

inline JExpr joint_decompose(const JointTable& t, JointGrouping grouping = JointGrouping::by_columns) {
  RationalMatrix exact(t.rows(), std::vector<Rational>(t.cols()));
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) exact[i][j] = Rational::from_double(t(i, j));
  return joint_decompose(exact, grouping);
}

/// The conditioning variable: Given::y computes H(X|Y), Given::x H(Y|X).
enum class Given { x, y };

namespace detail {
inline void check_marginals(std::span<const double> marg, Strictness mode) {
  if (mode != Strictness::strict) return;
  for (std::size_t k = 0; k < marg.size(); ++k) {
    if (marg[k] == 0.0) {
      throw DomainError("conditioning outcome " + std::to_string(k) + " has zero marginal probability");
    }
  }
}
}  // namespace detail

/// H(X|Y) = H(X,Y) - H(Y), or H(Y|X) = H(X,Y) - H(X).
inline double conditional_entropy(const JointTable& t, Given given, const LogBase& base = {},
                                  Strictness mode = Strictness::strict) {
  const auto marg = given == Given::y ? t.col_marginal() : t.row_marginal();
  detail::check_marginals(marg, mode);
  return joint_entropy(t, base) - base.from_nats(detail::plogp_sum(marg));
}

/// -sum_ij p(i,j) log p(x|y) (or p(y|x)) evaluated cell by cell.
inline double conditional_entropy_direct(const JointTable& t, Given given, const LogBase& base = {},
                                         Strictness mode = Strictness::strict) {
  const auto marg = given == Given::y ? t.col_marginal() : t.row_marginal();
  detail::check_marginals(marg, mode);
  double h = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double p = t(i, j);
      if (p <= 0.0) continue;
      h -= p * std::log(p / marg[given == Given::y ? j : i]);
    }
  return base.from_nats(h);
}

/// The three expressions for I(X;Y).
struct MutualInformation {
  double from_marginals;    // H(X) + H(Y) - H(X,Y)
  double from_conditional;  // H(X) - H(X|Y)
  double from_joint;        // H(X,Y) - H(X|Y) - H(Y|X)
};

inline MutualInformation mutual_information_all(const JointTable& t, const LogBase& base = {}) {
  const double hx = base.from_nats(detail::plogp_sum(t.row_marginal()));
  const double hy = base.from_nats(detail::plogp_sum(t.col_marginal()));
  const double hxy = joint_entropy(t, base);
  const double hx_given_y = conditional_entropy_direct(t, Given::y, base, Strictness::lenient);
  const double hy_given_x = conditional_entropy_direct(t, Given::x, base, Strictness::lenient);
  return {hx + hy - hxy, hx - hx_given_y, hxy - hx_given_y - hy_given_x};
}

inline double mutual_information(const JointTable& t, const LogBase& base = {}) {
  return mutual_information_all(t, base).from_marginals;
}

/// H(p) - H(q) + p H(q/p) + (1-p) H((1-q)/(1-p)); identically zero.
inline double four_term_residual(double p, double q, const LogBase& base = {}) {
  if (std::fabs(p) < kSingularGuard || std::fabs(1.0 - p) < kSingularGuard ||
      std::fabs(p - q) < kSingularGuard) {
    throw DomainError("four-term residual is singular near p in {0, 1} or p = q");
  }
  return h_extended(p, base) - h_extended(q, base) + p * h_extended(q / p, base) +
         (1.0 - p) * h_extended((1.0 - q) / (1.0 - p), base);
}

/// The three equal values produced by reordering and reorienting a vertex:
/// (1-q) H((p-q)/(1-q)), (p-1) H((q-1)/(p-1)), (p-1) H((p-q)/(p-1)).
struct DefectSymmetry {
  double left;
  double center;
  double right;

  double first_residual() const { return left - center; }
  double second_residual() const { return center - right; }
};

inline DefectSymmetry defect_symmetry_residuals(double p, double q, const LogBase& base = {}) {
  if (std::fabs(1.0 - p) < kSingularGuard || std::fabs(1.0 - q) < kSingularGuard ||
      std::fabs(p - q) < kSingularGuard) {
    throw DomainError("defect symmetry is singular near p = 1, q = 1 or p = q");
  }
  return {(1.0 - q) * h_extended((p - q) / (1.0 - q), base),
          (p - 1.0) * h_extended((q - 1.0) / (p - 1.0), base),
          (p - 1.0) * h_extended((p - q) / (p - 1.0), base)};
}

}  // namespace infodilog

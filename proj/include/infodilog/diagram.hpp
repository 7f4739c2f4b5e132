#pragma once

/**
 * @file diagram.hpp
 * @brief Layered planar networks of additive and multiplicative strands.
 *
 * A diagram is a list of input strands followed by slices, one generator per
 * slice, read bottom to top. Positions index the current strand list from
 * the left. Additive strands are always oriented upward; a reversed segment
 * is written with an explicit orientation dot (label negation) and the
 * vertex sign chosen by the author (merge +1, split -1).
 *
 * Multiplicative strands scale the additive strands to their right: an
 * additive label a sitting right of a strand with weight c and conorm L
 * reads c*a once moved to its left (c^-1 * a for conorm R). The invariant
 * of a diagram sums s * omega * <a,b> over additive vertices, where omega
 * is the product of those factors for every multiplicative strand left of
 * the vertex, times the factors of every later horizontal scaling line.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "infodilog/errors.hpp"
#include "infodilog/rational.hpp"
#include "infodilog/symbol_algebra.hpp"

namespace infodilog {

enum class StrandKind { additive, multiplicative };
enum class Conorm { L, R };

inline Conorm flip(Conorm c) { return c == Conorm::L ? Conorm::R : Conorm::L; }

struct StrandState {
  StrandKind kind = StrandKind::additive;
  Rational value;
  Conorm conorm = Conorm::L;  // meaningful for multiplicative strands only

  static StrandState add(Rational v) { return {StrandKind::additive, std::move(v), Conorm::L}; }
  static StrandState mult(Rational c, Conorm k = Conorm::L) {
    if (c.is_zero()) throw DomainError("multiplicative strand weight must be nonzero");
    return {StrandKind::multiplicative, std::move(c), k};
  }

  bool is_additive() const { return kind == StrandKind::additive; }

  /// Factor applied to an additive label crossing this strand leftward.
  Rational crossing_factor() const { return conorm == Conorm::L ? value : value.inv(); }

  std::string str() const {
    if (is_additive()) return "add(" + value.str() + ")";
    return "mult(" + value.str() + ", conorm=" + (conorm == Conorm::L ? "L" : "R") + ")";
  }

  friend bool operator==(const StrandState& a, const StrandState& b) {
    if (a.kind != b.kind || a.value != b.value) return false;
    return a.is_additive() || a.conorm == b.conorm;
  }
};

namespace gen {
struct Merge {
  std::size_t pos;
  friend bool operator==(const Merge&, const Merge&) = default;
};
struct Split {
  std::size_t pos;
  Rational left;
  std::optional<Rational> right;  // checked against value - left when given
  friend bool operator==(const Split&, const Split&) = default;
};
struct MMerge {
  std::size_t pos;
  friend bool operator==(const MMerge&, const MMerge&) = default;
};
struct VCross {
  std::size_t pos;
  friend bool operator==(const VCross&, const VCross&) = default;
};
struct Dot {
  std::size_t pos;
  friend bool operator==(const Dot&, const Dot&) = default;
};
struct RDot {
  std::size_t pos;
  friend bool operator==(const RDot&, const RDot&) = default;
};
struct MScale {
  Rational c;
  friend bool operator==(const MScale&, const MScale&) = default;
};
}  // namespace gen

using Generator = std::variant<gen::Merge, gen::Split, gen::MMerge, gen::VCross, gen::Dot, gen::RDot, gen::MScale>;

struct Diagram {
  std::string name;
  std::vector<StrandState> inputs;
  std::vector<Generator> slices;
  std::vector<int> lines;  // source line per slice, empty when built in code

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.name == b.name && a.inputs == b.inputs && a.slices == b.slices;
  }
};

class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, std::size_t slice, int line)
      : std::runtime_error(what), slice_(slice), line_(line) {}
  std::size_t slice() const { return slice_; }
  int line() const { return line_; }

 private:
  std::size_t slice_;
  int line_;
};

using StrandList = std::vector<StrandState>;

namespace detail {

struct SliceContext {
  std::size_t index;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    std::string where = "slice " + std::to_string(index);
    if (line > 0) where += " (line " + std::to_string(line) + ")";
    throw PropagationError(where + ": " + msg, index, line);
  }
};

inline void need_pos(const StrandList& s, std::size_t pos, std::size_t width, const SliceContext& ctx) {
  if (pos + width > s.size()) {
    ctx.fail("position " + std::to_string(pos) + " out of range for " + std::to_string(s.size()) +
             " strands");
  }
}

inline void need_kind(const StrandState& st, StrandKind kind, std::size_t pos, const SliceContext& ctx,
                      const char* op) {
  if (st.kind != kind) {
    ctx.fail(std::string(op) + " expects " + (kind == StrandKind::additive ? "an additive" : "a multiplicative") +
             " strand at position " + std::to_string(pos) + ", found " + st.str());
  }
}

// Applies one generator. Reports the additive vertex it creates, if any, as
// (sign, position, a, b) with labels as seen at the vertex.
struct Vertex {
  int sign;
  std::size_t pos;
  Rational a;
  Rational b;
};

inline std::optional<Vertex> apply(StrandList& s, const Generator& g, const SliceContext& ctx) {
  return std::visit(
      [&](const auto& op) -> std::optional<Vertex> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gen::Merge>) {
          need_pos(s, op.pos, 2, ctx);
          need_kind(s[op.pos], StrandKind::additive, op.pos, ctx, "merge");
          need_kind(s[op.pos + 1], StrandKind::additive, op.pos + 1, ctx, "merge");
          Vertex v{+1, op.pos, s[op.pos].value, s[op.pos + 1].value};
          s[op.pos].value = v.a + v.b;
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(op.pos) + 1);
          return v;
        } else if constexpr (std::is_same_v<T, gen::Split>) {
          need_pos(s, op.pos, 1, ctx);
          need_kind(s[op.pos], StrandKind::additive, op.pos, ctx, "split");
          const Rational total = s[op.pos].value;
          Rational right = total - op.left;
          if (op.right && *op.right != right) {
            ctx.fail("split labels " + op.left.str() + " + " + op.right->str() + " do not add up to " +
                     total.str());
          }
          Vertex v{-1, op.pos, op.left, right};
          s[op.pos].value = op.left;
          s.insert(s.begin() + static_cast<std::ptrdiff_t>(op.pos) + 1, StrandState::add(std::move(right)));
          return v;
        } else if constexpr (std::is_same_v<T, gen::MMerge>) {
          need_pos(s, op.pos, 2, ctx);
          need_kind(s[op.pos], StrandKind::multiplicative, op.pos, ctx, "mmerge");
          need_kind(s[op.pos + 1], StrandKind::multiplicative, op.pos + 1, ctx, "mmerge");
          if (s[op.pos].conorm != s[op.pos + 1].conorm) {
            ctx.fail("mmerge of strands with different conormal directions");
          }
          s[op.pos].value *= s[op.pos + 1].value;
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(op.pos) + 1);
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, gen::VCross>) {
          need_pos(s, op.pos, 2, ctx);
          StrandState& left = s[op.pos];
          StrandState& right = s[op.pos + 1];
          if (!left.is_additive() && right.is_additive()) {
            right.value *= left.crossing_factor();
          } else if (left.is_additive() && !right.is_additive()) {
            left.value /= right.crossing_factor();
          }
          std::swap(left, right);
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, gen::Dot>) {
          need_pos(s, op.pos, 1, ctx);
          need_kind(s[op.pos], StrandKind::additive, op.pos, ctx, "dot");
          s[op.pos].value = -s[op.pos].value;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, gen::RDot>) {
          need_pos(s, op.pos, 1, ctx);
          need_kind(s[op.pos], StrandKind::multiplicative, op.pos, ctx, "rdot");
          s[op.pos].value = s[op.pos].value.inv();
          s[op.pos].conorm = flip(s[op.pos].conorm);
          return std::nullopt;
        } else {
          if (op.c.is_zero()) ctx.fail("mscale factor must be nonzero");
          for (auto& st : s) {
            if (st.is_additive()) st.value *= op.c;
          }
          return std::nullopt;
        }
      },
      g);
}

inline SliceContext context_of(const Diagram& d, std::size_t i) {
  return {i, i < d.lines.size() ? d.lines[i] : 0};
}

}  // namespace detail

/// Strand lists before the first slice and after every slice; the last
/// entry is the top boundary.
inline std::vector<StrandList> propagate(const Diagram& d) {
  std::vector<StrandList> history;
  history.reserve(d.slices.size() + 1);
  history.push_back(d.inputs);
  StrandList cur = d.inputs;
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    detail::apply(cur, d.slices[i], detail::context_of(d, i));
    history.push_back(cur);
  }
  return history;
}

/// The invariant sum_p s(p) omega(p) <a_p, b_p>.
inline JExpr jmath(const Diagram& d) {
  // scale_above[i]: product of the scaling lines in slices i, i+1, ...
  std::vector<Rational> scale_above(d.slices.size() + 1, Rational(1));
  for (std::size_t i = d.slices.size(); i-- > 0;) {
    scale_above[i] = scale_above[i + 1];
    if (const auto* ms = std::get_if<gen::MScale>(&d.slices[i])) scale_above[i] *= ms->c;
  }
  JExpr out;
  StrandList cur = d.inputs;
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    const StrandList before = cur;
    auto vertex = detail::apply(cur, d.slices[i], detail::context_of(d, i));
    if (!vertex) continue;
    Rational omega = scale_above[i + 1];
    for (std::size_t j = 0; j < vertex->pos; ++j) {
      if (!before[j].is_additive()) omega *= before[j].crossing_factor();
    }
    out.add_term(Rational(vertex->sign) * omega, vertex->a, vertex->b);
  }
  return out;
}

/// Bracket defects emitted when a boundary wall absorbs every additive vertex.
inline BetaExpr wall_absorb(const Diagram& d) { return j_to_beta(jmath(d)); }

struct BoundarySignature {
  StrandList inputs;
  StrandList outputs;
  friend bool operator==(const BoundarySignature&, const BoundarySignature&) = default;
};

inline BoundarySignature boundary_signature(const Diagram& d) {
  auto history = propagate(d);
  return {d.inputs, std::move(history.back())};
}

struct EvalResult {
  JExpr invariant;
  StrandList outputs;
  std::optional<BetaExpr> wall_defects;
  double entropy_value = 0.0;
  LogBase base;
};

inline EvalResult evaluate(const Diagram& d, const LogBase& base = {}, bool wall = false) {
  EvalResult r;
  r.invariant = jmath(d);
  r.outputs = propagate(d).back();
  if (wall) r.wall_defects = j_to_beta(r.invariant);
  r.entropy_value = eval_entropy_real(r.invariant, base);
  r.base = base;
  return r;
}

// ---------------------------------------------------------------------------
// Builders

/// Left-to-right chain of merges: ((p1 + p2) + p3) + ...
inline Diagram build_chain_merge(std::span<const Rational> labels, std::string name = "chain") {
  Diagram d;
  d.name = std::move(name);
  for (const auto& p : labels) d.inputs.push_back(StrandState::add(p));
  for (std::size_t i = 1; i < labels.size(); ++i) d.slices.emplace_back(gen::Merge{0});
  return d;
}

/// Binary tree over consecutive leaves; a leaf has no children.
struct MergeTree {
  std::vector<MergeTree> children;  // empty or exactly two

  static MergeTree leaf() { return {}; }
  static MergeTree join(MergeTree l, MergeTree r) {
    MergeTree t;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
  }
  bool is_leaf() const { return children.empty(); }
  std::size_t leaves() const { return is_leaf() ? 1 : children[0].leaves() + children[1].leaves(); }

  std::string str() const {
    if (is_leaf()) return "*";
    return "(" + children[0].str() + " " + children[1].str() + ")";
  }
};

/// Every binary tree with n leaves (Catalan(n-1) of them).
inline std::vector<MergeTree> all_merge_trees(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {MergeTree::leaf()};
  std::vector<MergeTree> out;
  for (std::size_t k = 1; k < n; ++k) {
    for (const auto& l : all_merge_trees(k))
      for (const auto& r : all_merge_trees(n - k)) out.push_back(MergeTree::join(l, r));
  }
  return out;
}

namespace detail {
inline void emit_tree(const MergeTree& t, std::size_t offset, std::vector<Generator>& out) {
  if (t.is_leaf()) return;
  emit_tree(t.children[0], offset, out);
  emit_tree(t.children[1], offset + 1, out);
  out.emplace_back(gen::Merge{offset});
}
}  // namespace detail

inline Diagram build_merge_tree(std::span<const Rational> labels, const MergeTree& shape,
                                std::string name = "tree") {
  if (shape.leaves() != labels.size()) {
    throw InputError("merge tree has " + std::to_string(shape.leaves()) + " leaves but " +
                     std::to_string(labels.size()) + " labels were given");
  }
  Diagram d;
  d.name = std::move(name);
  for (const auto& p : labels) d.inputs.push_back(StrandState::add(p));
  detail::emit_tree(shape, 0, d.slices);
  return d;
}

/// Joint table as a network. by_columns feeds the cells column by column
/// and merges each column before merging the column sums; by_rows is the
/// transpose.
inline Diagram build_joint_grid(const std::vector<std::vector<Rational>>& p,
                                bool by_columns = true, std::string name = "joint") {
  if (p.empty() || p.front().empty()) throw InputError("joint table must be non-empty");
  const std::size_t n = p.size();
  const std::size_t m = p.front().size();
  for (const auto& row : p) {
    if (row.size() != m) throw InputError("joint table rows must have equal length");
  }
  const std::size_t outer = by_columns ? m : n;
  const std::size_t inner = by_columns ? n : m;
  Diagram d;
  d.name = std::move(name);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t k = 0; k < inner; ++k) d.inputs.push_back(StrandState::add(by_columns ? p[k][o] : p[o][k]));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t k = 1; k < inner; ++k) d.slices.emplace_back(gen::Merge{o});
  for (std::size_t o = 1; o < outer; ++o) d.slices.emplace_back(gen::Merge{0});
  return d;
}

}  // namespace infodilog

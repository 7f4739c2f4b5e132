// Acceptance suite: twelve criteria, one PASS/FAIL line each. Exits nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "infodilog/infodilog.hpp"
#include "oracles.hpp"

using namespace infodilog;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 when no limit is stated
  std::function<Outcome()> run;
};

Rational q(const char* s) { return Rational::parse(s); }

std::string count(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

JointTable table_of(const RationalMatrix& p) { return suites::to_table(p); }

Outcome exact_cocycle() {
  std::size_t ok = 0;
  const std::size_t n = 1000;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1001, 0, i);
    auto [a, b, c] = suites::cocycle_triple(s);
    const JExpr e = suites::cocycle_combination(a, b, c);
    std::vector<std::tuple<Rational, Rational, Rational>> terms;
    for (const auto& [k, coeff] : e.terms()) terms.emplace_back(coeff, k.first, k.second);
    if (chi(e).empty() && oracle::symbol_image(terms).empty()) ++ok;
  }
  return {ok == n, count(ok, n) + " triples"};
}

Outcome exact_four_term() {
  const BetaExpr instance = beta_symbol(2) - beta_symbol(4) + beta_symbol(2, 2) - beta_symbol(3);
  const bool instance_ok = four_term_element(2, 4) == instance && d_map(instance).empty();
  std::size_t ok = 0;
  const std::size_t n = 500;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1002, 0, i);
    auto [a, b] = suites::deformable_pair(s);
    const BetaExpr e = four_term_element(a, b);
    std::vector<std::pair<Rational, Rational>> terms;
    for (const auto& [x, c] : e.terms()) terms.emplace_back(c, x);
    if (d_map(e).empty() && oracle::bracket_image(terms).empty()) ++ok;
  }
  return {ok == n && instance_ok,
          count(ok, n) + " pairs; (2,4) instance " + (instance_ok ? "ok" : "wrong") + " d_map=" + d_map(instance).str()};
}

Outcome numeric_four_term() {
  std::size_t ok = 0;
  double worst = 0.0;
  const std::size_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1003, 0, i);
    double p = 0, qq = 0;
    do {
      p = s.uniform(-2.0, 3.0);
      qq = s.uniform(-2.0, 3.0);
    } while (std::fabs(p) < kSingularGuard || std::fabs(1 - p) < kSingularGuard || std::fabs(p - qq) < kSingularGuard);
    const double r = std::fabs(four_term_residual(p, qq));
    worst = std::max(worst, r);
    if (r <= 1e-10) ++ok;
  }
  return {ok == n, count(ok, n) + " pairs, max |residual| " + sci(worst)};
}

Outcome decomposition() {
  std::size_t ok = 0;
  const std::size_t n = 2000;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1004, 0, i);
    const auto k = static_cast<std::size_t>(s.integer(3, 8));
    const auto p = s.distribution(k);
    std::vector<double> pd;
    for (const auto& x : p) pd.push_back(x.to_double());
    const double err = std::fabs(shannon(Distribution(pd)) - eval_entropy_real(chain_decompose(p)));
    const double ref_err = std::fabs(oracle::shannon(pd) - eval_entropy_real(chain_decompose(p)));
    worst = std::max(worst, err);
    if (err <= 1e-12 * k && ref_err <= 1e-12 * k) ++ok;
  }
  std::size_t shapes = 0, shapes_ok = 0;
  for (std::size_t k = 3; k <= 6; ++k) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      Sampler s(1104, k, i);
      const auto p = s.distribution(k);
      const TensorCanonical ref = chi(chain_decompose(p));
      for (const auto& t : all_merge_trees(k)) {
        ++shapes;
        if (chi(jmath(build_merge_tree(p, t))) == ref) ++shapes_ok;
      }
    }
  }
  return {ok == n && shapes_ok == shapes,
          count(ok, n) + " distributions (max err " + sci(worst) + "), " + count(shapes_ok, shapes) +
              " merge-tree orders chi-equal"};
}

Outcome joint_decomposition() {
  std::size_t ok = 0;
  const std::size_t n = 1000;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1005, 0, i);
    const auto r = static_cast<std::size_t>(s.integer(1, 4));
    const auto c = static_cast<std::size_t>(s.integer(1, 4));
    const auto p = s.table(r, c);
    const double err = std::fabs(joint_entropy(table_of(p)) - eval_entropy_real(joint_decompose(p)));
    if (err <= 1e-12 * static_cast<double>(r * c)) ++ok;
  }
  std::size_t twoby = 0;
  const std::size_t m = 200;
  for (std::uint64_t i = 0; i < m; ++i) {
    Sampler s(1105, 0, i);
    const auto p = s.table(2, 2);
    JExpr expected;
    expected.add_term(1, p[0][0], p[1][0]);
    expected.add_term(1, p[0][1], p[1][1]);
    expected.add_term(1, p[0][0] + p[1][0], p[0][1] + p[1][1]);
    if (joint_decompose(p) == expected) ++twoby;
  }
  return {ok == n && twoby == m, count(ok, n) + " tables within 1e-12*nm, " + count(twoby, m) + " 2x2 termwise"};
}

Outcome chain_rule_and_mi() {
  std::size_t ok = 0;
  const std::size_t n = 1000;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1006, 0, i);
    const auto t = table_of(s.table(static_cast<std::size_t>(s.integer(1, 5)), static_cast<std::size_t>(s.integer(1, 5))));
    const double hx = shannon(Distribution(t.row_marginal()));
    const double chain = std::fabs(joint_entropy(t) - conditional_entropy(t, Given::x) - hx);
    const auto mi = mutual_information_all(t);
    const double spread = std::max({std::fabs(mi.from_marginals - mi.from_conditional),
                                    std::fabs(mi.from_conditional - mi.from_joint),
                                    std::fabs(mi.from_marginals - mi.from_joint)});
    worst = std::max({worst, chain, spread});
    if (chain <= 1e-12 && spread <= 1e-12) ++ok;
  }
  return {ok == n, count(ok, n) + " tables, max deviation " + sci(worst)};
}

Outcome diagram_invariance() {
  const std::string in4 = "inputs: add(1/10) add(1/5) add(3/10) add(2/5)\n";
  const Diagram a = parse_diagram(in4 + "merge @0\nmerge @0\nmerge @0\nend\n");
  const Diagram b = parse_diagram(in4 + "merge @0\nmerge @1\nmerge @0\nend\n");
  const Diagram c = parse_diagram(in4 + "merge @2\nmerge @1\nmerge @0\nend\n");
  const std::string in3 = "inputs: add(1/6) add(1/3) add(1/2)\n";
  const Diagram left = parse_diagram(in3 + "merge @0\nmerge @0\nend\n");
  const Diagram right = parse_diagram(in3 + "merge @1\nmerge @0\nend\n");
  const Diagram ms = parse_diagram("inputs: add(1/3) add(2/3)\nmerge @0\nsplit @0 left=1/3\nend\n");

  const bool three = chi(jmath(a)) == chi(jmath(b)) && chi(jmath(b)) == chi(jmath(c)) &&
                     boundary_signature(a) == boundary_signature(c);
  const bool pair = chi(jmath(left)) == chi(jmath(right)) && boundary_signature(left) == boundary_signature(right);
  const bool zero = jmath(ms).empty();
  return {three && pair && zero, std::string("four-leaf orders ") + (three ? "equal" : "differ") +
                                     ", three-leaf pair " + (pair ? "equal" : "differ") + ", merge-then-split " +
                                     (zero ? "zero" : jmath(ms).str())};
}

Outcome boundary_wall() {
  std::size_t ok = 0;
  const std::size_t n = 1000;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1008, 0, i);
    const auto k = static_cast<std::size_t>(s.integer(2, 8));
    const auto p = s.distribution(k);
    const double h = shannon(Distribution::from_rationals(p));
    if (std::fabs(eval_entropy_real(wall_absorb(build_chain_merge(p))) - h) <= 1e-12 * k) ++ok;
  }
  std::size_t walls = 0;
  const std::size_t m = 200;
  const Rational one(1);
  for (std::uint64_t i = 0; i < m; ++i) {
    Sampler s(1108, 0, i);
    const Rational a = s.off_unit();
    const Rational b = s.rational_where([&](const Rational& r) { return !r.is_zero() && !r.is_one() && r != a; });
    Diagram d;
    d.inputs = {StrandState::add(b), StrandState::add(a - b), StrandState::add(b - a), StrandState::add(one - b)};
    d.slices = {gen::Merge{0}, gen::Merge{1}, gen::Merge{0}};
    BetaExpr stated;
    stated.add_term(a, b / a);
    stated.add_term(one - a, (one - b) / (one - a));
    stated.add_term(one, a);
    const auto emitted = d_map(wall_absorb(d));
    if (emitted == d_map(stated) && d_map(stated) == d_map(beta_symbol(b))) ++walls;
  }
  return {ok == n && walls == m, count(ok, n) + " chain absorptions match H, " + count(walls, m) +
                                     " four-strand walls d_map-equal to [b]"};
}

Outcome dual_lemmas() {
  const DualNumber lhs = dual_bracket(3) / dual_bracket(2);
  const bool spot = lhs == DualNumber(q("3/2"), q("-3/2")) && lhs == star_action(2, dual_bracket(q("3/2")));
  std::size_t ok = 0;
  const std::size_t n = 1000;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1009, 0, i);
    auto [a, b] = suites::deformable_pair(s);
    if (check_dual_lemmas(a, b).all()) ++ok;
  }
  return {ok == n && spot, count(ok, n) + " pairs; <3>/<2> = " + lhs.str() + (spot ? " = 2*<3/2>" : " (wrong)")};
}

Outcome deformation() {
  std::size_t ok = 0;
  const std::size_t n = 500;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1010, 0, i);
    auto [a, b] = suites::deformable_pair(s);
    const BetaExpr e = deform_five_term(a, b);
    if (e == four_term_element(a, b) && d_map(e).empty()) ++ok;
  }
  return {ok == n, count(ok, n) + " pairs termwise equal and d_map-zero"};
}

Outcome defect_symmetry() {
  const auto inst = defect_symmetry_residuals(3.0, 2.0);
  const double ln4 = 2.0 * std::numbers::ln2;
  const bool spot = std::fabs(inst.left - ln4) <= 1e-12 && std::fabs(inst.center - ln4) <= 1e-12 &&
                    std::fabs(inst.right - ln4) <= 1e-12;
  std::size_t ok = 0;
  const std::size_t n = 10000;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1011, 0, i);
    double p = 0, qq = 0;
    do {
      p = s.uniform(-2.0, 3.0);
      qq = s.uniform(-2.0, 3.0);
    } while (std::fabs(1 - p) < kSingularGuard || std::fabs(1 - qq) < kSingularGuard || std::fabs(p - qq) < kSingularGuard);
    const auto r = defect_symmetry_residuals(p, qq);
    const double e = std::max(std::fabs(r.first_residual()), std::fabs(r.second_residual()));
    worst = std::max(worst, e);
    if (e <= 1e-10) ++ok;
  }
  return {ok == n && spot, count(ok, n) + " pairs (max " + sci(worst) + "); (3,2) common value " +
                               std::to_string(inst.left) + (spot ? " = 2 ln 2" : " (wrong)")};
}

Outcome scaling() {
  std::size_t ok = 0, diagrams = 0;
  const std::size_t n = 500;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sampler s(1012, 0, i);
    const Rational c = s.nonzero(), a = s.rational(), b = s.rational();
    if (chi(j_symbol(c * a, c * b) - c * j_symbol(a, b)).empty()) ++ok;
    Diagram before, after;
    before.inputs = after.inputs = {StrandState::add(a), StrandState::add(b)};
    before.slices = {gen::MScale{c}, gen::Merge{0}};
    after.slices = {gen::Merge{0}, gen::MScale{c}};
    if (chi(jmath(before)) == chi(jmath(after)) && boundary_signature(before) == boundary_signature(after)) ++diagrams;
  }
  return {ok == n && diagrams == n, count(ok, n) + " triples, " + count(diagrams, n) + " scaling-line diagrams"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact 2-cocycle", 5.0, exact_cocycle},
      {2, "exact four-term bracket relation", 5.0, exact_four_term},
      {3, "numeric four-term entropy equation", 10.0, numeric_four_term},
      {4, "chain decomposition and merge-tree orders", 0.0, decomposition},
      {5, "joint decomposition", 0.0, joint_decomposition},
      {6, "chain rule and mutual information", 0.0, chain_rule_and_mi},
      {7, "diagram invariance", 0.0, diagram_invariance},
      {8, "boundary wall", 0.0, boundary_wall},
      {9, "dual-number lemmas", 0.0, dual_lemmas},
      {10, "five-term deformation", 10.0, deformation},
      {11, "defect symmetry", 0.0, defect_symmetry},
      {12, "scaling coherence", 0.0, scaling},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0.0 || secs < c.time_limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s [%2d] %s: %s (%.3f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str(), secs,
                c.time_limit_s > 0 ? (std::string(", limit ") + std::to_string(static_cast<int>(c.time_limit_s)) + " s").c_str()
                                   : "");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

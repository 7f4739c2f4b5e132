#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "infodilog/diagram.hpp"
#include "infodilog/diagram_dsl.hpp"
#include "infodilog/entropy.hpp"
#include "infodilog/random.hpp"

using namespace infodilog;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

Diagram make(std::vector<StrandState> inputs, std::vector<Generator> slices) {
  Diagram d;
  d.inputs = std::move(inputs);
  d.slices = std::move(slices);
  return d;
}

StrandState add(const char* v) { return StrandState::add(q(v)); }

bool chi_equal(const Diagram& a, const Diagram& b) { return chi(jmath(a)) == chi(jmath(b)); }

}  // namespace

TEST(Propagate, Examples) {
  auto h = propagate(make({add("1/3"), add("2/3")}, {gen::Merge{0}}));
  EXPECT_EQ(h.back(), StrandList{add("1")});

  h = propagate(make({StrandState::mult(3), add("2")}, {gen::VCross{0}}));
  EXPECT_EQ(h.back(), (StrandList{add("6"), StrandState::mult(3)}));

  h = propagate(make({add("5")}, {gen::Dot{0}}));
  EXPECT_EQ(h.back(), StrandList{add("-5")});
}

TEST(Propagate, OtherGenerators) {
  auto h = propagate(make({add("1")}, {gen::Split{0, q("1/4"), std::nullopt}}));
  EXPECT_EQ(h.back(), (StrandList{add("1/4"), add("3/4")}));

  h = propagate(make({StrandState::mult(2), StrandState::mult(5)}, {gen::MMerge{0}}));
  EXPECT_EQ(h.back(), StrandList{StrandState::mult(10)});

  h = propagate(make({StrandState::mult(2)}, {gen::RDot{0}}));
  EXPECT_EQ(h.back(), StrandList{StrandState::mult(q("1/2"), Conorm::R)});

  h = propagate(make({add("1"), StrandState::mult(2), add("3")}, {gen::MScale{q("1/2")}}));
  EXPECT_EQ(h.back(), (StrandList{add("1/2"), StrandState::mult(2), add("3/2")}));

  h = propagate(make({add("6"), StrandState::mult(3, Conorm::R)}, {gen::VCross{0}}));
  EXPECT_EQ(h.back(), (StrandList{StrandState::mult(3, Conorm::R), add("18")}));
}

TEST(Propagate, Errors) {
  EXPECT_THROW(propagate(make({StrandState::mult(2), add("1")}, {gen::Merge{0}})), PropagationError);
  EXPECT_THROW(propagate(make({add("1"), add("1")}, {gen::Merge{1}})), PropagationError);
  EXPECT_THROW(propagate(make({add("1")}, {gen::Split{0, q("1/4"), q("1/2")}})), PropagationError);
  EXPECT_THROW(propagate(make({StrandState::mult(2), StrandState::mult(2, Conorm::R)}, {gen::MMerge{0}})),
               PropagationError);
  EXPECT_THROW(propagate(make({add("1")}, {gen::RDot{0}})), PropagationError);
  EXPECT_THROW(propagate(make({StrandState::mult(2)}, {gen::Dot{0}})), PropagationError);
  try {
    propagate(make({add("1"), add("1")}, {gen::Merge{0}, gen::Merge{0}}));
    FAIL();
  } catch (const PropagationError& e) {
    EXPECT_EQ(e.slice(), 1u);
  }
}

TEST(Jmath, Examples) {
  const Diagram single = make({add("1/3"), add("2/3")}, {gen::Merge{0}});
  EXPECT_EQ(jmath(single), j_symbol(q("1/3"), q("2/3")));
  EXPECT_NEAR(eval_entropy_real(jmath(single)), h_extended(1.0 / 3.0), 1e-15);

  const Diagram zero = make({add("1/3"), add("2/3")}, {gen::Merge{0}, gen::Split{0, q("1/3"), std::nullopt}});
  EXPECT_TRUE(jmath(zero).empty());

  const Diagram weighted = make({StrandState::mult(2), add("1"), add("3")}, {gen::Merge{1}});
  EXPECT_EQ(jmath(weighted), Rational(2) * j_symbol(1, 3));
  EXPECT_EQ(chi(jmath(weighted)), chi(j_symbol(2, 6)));

  // Crossing first and merging on the left gives the same class.
  const Diagram crossed =
      make({StrandState::mult(2), add("1"), add("3")}, {gen::VCross{0}, gen::VCross{1}, gen::Merge{0}});
  EXPECT_EQ(propagate(crossed).back(), (StrandList{add("8"), StrandState::mult(2)}));
  EXPECT_EQ(chi(jmath(crossed)), chi(jmath(weighted)));
}

TEST(Jmath, ConormRUsesInverseWeight) {
  const Diagram d = make({StrandState::mult(2, Conorm::R), add("1"), add("3")}, {gen::Merge{1}});
  EXPECT_EQ(jmath(d), q("1/2") * j_symbol(1, 3));
  const Diagram rdot = make({StrandState::mult(q("1/2"), Conorm::L), add("1"), add("3")}, {gen::RDot{0}, gen::Merge{1}});
  EXPECT_EQ(jmath(rdot), q("1/2") * j_symbol(1, 3));
}

TEST(WallAbsorb, Examples) {
  EXPECT_EQ(wall_absorb(make({add("1"), add("2")}, {gen::Merge{0}})), beta_symbol(q("1/3"), 3));

  for (std::uint64_t i = 0; i < 200; ++i) {
    Sampler s(41, 0, i);
    const Rational a = s.off_unit();
    const Rational b = s.rational_where([&](const Rational& r) { return !r.is_zero() && r != a && !r.is_one(); });
    const Diagram d = make({StrandState::add(b), StrandState::add(a - b), StrandState::add(b - a),
                            StrandState::add(Rational(1) - b)},
                           {gen::Merge{0}, gen::Merge{1}, gen::Merge{0}});
    const BetaExpr defects = wall_absorb(d);
    BetaExpr expected;
    expected.add_term(a, b / a);
    expected.add_term(Rational(1) - a, (b - a) / (Rational(1) - a));
    expected.add_term(Rational(1), a);
    EXPECT_EQ(defects, expected);
    BetaExpr printed_form;
    printed_form.add_term(a, b / a);
    printed_form.add_term(Rational(1) - a, (Rational(1) - b) / (Rational(1) - a));
    printed_form.add_term(Rational(1), a);
    EXPECT_EQ(d_map(defects), d_map(printed_form));
    EXPECT_EQ(d_map(defects), d_map(beta_symbol(b)));
  }
}

TEST(WallAbsorb, ChainMergeGivesShannon) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    Sampler s(42, 0, i);
    const auto n = static_cast<std::size_t>(s.integer(2, 8));
    const auto p = s.distribution(n);
    const BetaExpr defects = wall_absorb(build_chain_merge(p));
    EXPECT_NEAR(eval_entropy_real(defects), shannon(Distribution::from_rationals(p)), 1e-12 * n);
    EXPECT_NEAR(eval_entropy_real(defects, LogBase::two()),
                shannon(Distribution::from_rationals(p), LogBase::two()), 1e-12 * n);
  }
}

TEST(BoundarySignature, Examples) {
  const std::vector<Rational> p{q("1/2"), q("1/4"), q("1/4")};
  const auto sig = boundary_signature(build_chain_merge(p));
  EXPECT_EQ(sig.inputs, (StrandList{add("1/2"), add("1/4"), add("1/4")}));
  EXPECT_EQ(sig.outputs, StrandList{add("1")});

  const Diagram through = make({add("1/2"), add("1/2"), StrandState::mult(3)}, {gen::Merge{0}});
  EXPECT_EQ(boundary_signature(through).outputs, (StrandList{add("1"), StrandState::mult(3)}));
}

TEST(Builders, ChainMatchesChainDecompose) {
  const std::vector<Rational> p{q("1/2"), q("1/4"), q("1/4")};
  EXPECT_EQ(jmath(build_chain_merge(p)), chain_decompose(p));
}

TEST(Builders, MergeTreeCountsAreCatalan) {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42};
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(all_merge_trees(n).size(), catalan[n - 1]);
  EXPECT_THROW(build_merge_tree(std::vector<Rational>{1, 2}, MergeTree::leaf()), InputError);
}

TEST(Invariance, AllMergeTreesAgree) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Sampler s(43, 0, i);
    const auto n = static_cast<std::size_t>(s.integer(2, 6));
    std::vector<Rational> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back(s.nonzero());
    const auto trees = all_merge_trees(n);
    const Diagram first = build_merge_tree(labels, trees[0]);
    for (const auto& t : trees) {
      const Diagram d = build_merge_tree(labels, t);
      ASSERT_EQ(boundary_signature(d), boundary_signature(first));
      EXPECT_TRUE(chi_equal(d, first)) << t.str();
    }
  }
}

TEST(Invariance, MergeOrders) {
  const StrandList in{add("1/10"), add("1/5"), add("3/10"), add("2/5")};
  const Diagram a = make(in, {gen::Merge{0}, gen::Merge{0}, gen::Merge{0}});
  const Diagram b = make(in, {gen::Merge{0}, gen::Merge{1}, gen::Merge{0}});
  const Diagram c = make(in, {gen::Merge{2}, gen::Merge{1}, gen::Merge{0}});
  EXPECT_TRUE(chi_equal(a, b));
  EXPECT_TRUE(chi_equal(b, c));
  EXPECT_NE(jmath(a), jmath(c));

  const StrandList three{add("1/6"), add("1/3"), add("1/2")};
  EXPECT_TRUE(chi_equal(make(three, {gen::Merge{0}, gen::Merge{0}}), make(three, {gen::Merge{1}, gen::Merge{0}})));
}

TEST(Invariance, ScalingBeforeOrAfterMerge) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Sampler s(44, 0, i);
    const Rational a = s.rational(), b = s.rational(), c = s.nonzero();
    const StrandList in{StrandState::add(a), StrandState::add(b)};
    const Diagram before = make(in, {gen::MScale{c}, gen::Merge{0}});
    const Diagram after = make(in, {gen::Merge{0}, gen::MScale{c}});
    ASSERT_EQ(propagate(before).back(), propagate(after).back());
    EXPECT_TRUE(chi_equal(before, after));
  }
}

TEST(Invariance, PullApartMove) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Sampler s(45, 0, i);
    const StrandState m = StrandState::mult(s.nonzero(), i % 2 ? Conorm::L : Conorm::R);
    const StrandList in{StrandState::add(s.rational()), m, StrandState::add(s.rational())};
    const Diagram d = make(in, {gen::VCross{0}, gen::VCross{0}, gen::VCross{1}, gen::VCross{1}});
    EXPECT_EQ(propagate(d).back(), in);
    EXPECT_TRUE(jmath(d).empty());
  }
}

TEST(Invariance, DotsSquareToIdentity) {
  const StrandList in{add("3/7"), StrandState::mult(q("5/2"), Conorm::R)};
  EXPECT_EQ(propagate(make(in, {gen::Dot{0}, gen::Dot{0}})).back(), in);
  EXPECT_EQ(propagate(make(in, {gen::RDot{1}, gen::RDot{1}})).back(), in);
}

TEST(Builders, JointGridMatchesJointDecompose) {
  const RationalMatrix p{{q("1/10"), q("2/10")}, {q("3/10"), q("4/10")}};
  const JExpr expected = j_symbol(q("1/10"), q("3/10")) + j_symbol(q("1/5"), q("2/5")) +
                         j_symbol(q("2/5"), q("3/5"));
  EXPECT_EQ(jmath(build_joint_grid(p)), expected);
  EXPECT_EQ(jmath(build_joint_grid(p)), joint_decompose(p));
  EXPECT_EQ(jmath(build_joint_grid(p, false)), joint_decompose(p, JointGrouping::by_rows));
  for (std::uint64_t i = 0; i < 100; ++i) {
    Sampler s(46, 0, i);
    const auto t = s.table(static_cast<std::size_t>(s.integer(1, 4)), static_cast<std::size_t>(s.integer(1, 4)));
    EXPECT_EQ(jmath(build_joint_grid(t)), joint_decompose(t));
    EXPECT_EQ(jmath(build_joint_grid(t, false)), joint_decompose(t, JointGrouping::by_rows));
  }
}

TEST(Evaluate, WallDefectsAreTheImageOfTheInvariant) {
  const Diagram d = make({add("1/2"), add("1/4"), add("1/4")}, {gen::Merge{0}, gen::Merge{0}});
  const EvalResult r = evaluate(d, LogBase::two(), true);
  ASSERT_TRUE(r.wall_defects.has_value());
  EXPECT_EQ(*r.wall_defects, j_to_beta(r.invariant));
  EXPECT_NEAR(r.entropy_value, 1.5, 1e-12);
  EXPECT_EQ(r.outputs, StrandList{add("1")});
  EXPECT_FALSE(evaluate(d).wall_defects.has_value());
}

// ---------------------------------------------------------------------------
// Text format

TEST(Dsl, MinimalProgram) {
  const Diagram d = parse_diagram("inputs: add(1/3) add(2/3)\nmerge @0\nend\n");
  EXPECT_EQ(d.inputs.size(), 2u);
  EXPECT_EQ(d.slices.size(), 1u);
  EXPECT_EQ(d.lines, std::vector<int>{2});
}

TEST(Dsl, MissingEndNamesTheToken) {
  try {
    parse_diagram("inputs: add(1/3) add(2/3)\nmerge @0\n");
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_NE(e.diagnostics()[0].message.find("'end'"), std::string::npos);
  }
}

TEST(Dsl, CrossingProgramRoundTrips) {
  const Diagram d = parse_diagram("inputs: mult(3, conorm=L) add(1)\nvcross @0\nend");
  EXPECT_EQ(d.inputs[0], StrandState::mult(3, Conorm::L));
  EXPECT_EQ(parse_diagram(print_diagram(d)), d);
}

TEST(Dsl, FullGrammarRoundTrips) {
  const char* text = R"(# every generator
diagram "all"
inputs: add(1/2) add(1/4) mult(3, conorm=L) add(1/4)   # trailing comment
merge @0
vcross @1
split @0 left=1/8
mscale 2
dot @2
rdot @3
split @0 left=1/8 right=1/8
end
)";
  const Diagram d = parse_diagram(text);
  EXPECT_EQ(d.name, "all");
  EXPECT_EQ(d.slices.size(), 7u);
  EXPECT_EQ(parse_diagram(print_diagram(d)), d);
  EXPECT_NO_THROW(propagate(d));
}

TEST(Dsl, MultDefaultsToConormL) {
  const Diagram d = parse_diagram("inputs: mult(3) mult(1/2, conorm=R)\nend");
  EXPECT_EQ(d.inputs[0].conorm, Conorm::L);
  EXPECT_EQ(d.inputs[1].conorm, Conorm::R);
}

TEST(Dsl, CollectsErrorsWithLocations) {
  const char* text =
      "inputs: add(1/2) add(x)\n"
      "merge 0\n"
      "frobnicate @1\n"
      "split @0 left=1/0\n"
      "end\n";
  try {
    parse_diagram(text);
    FAIL();
  } catch (const ParseError& e) {
    const auto& d = e.diagnostics();
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0].line, 1);
    EXPECT_EQ(d[0].column, 22);
    EXPECT_EQ(d[1].line, 2);
    EXPECT_EQ(d[1].column, 7);
    EXPECT_EQ(d[2].line, 3);
    EXPECT_NE(d[2].message.find("unknown generator"), std::string::npos);
    EXPECT_EQ(d[3].line, 4);
  }
}

TEST(Dsl, OtherErrors) {
  EXPECT_THROW(parse_diagram("merge @0\nend"), ParseError);
  EXPECT_THROW(parse_diagram("inputs: add(1)\nend\nmerge @0"), ParseError);
  EXPECT_THROW(parse_diagram("inputs: mult(0)\nend"), ParseError);
  EXPECT_THROW(parse_diagram("inputs: mult(2, conorm=Q)\nend"), ParseError);
  EXPECT_THROW(parse_diagram("inputs: add(1)\nmscale 0\nend"), ParseError);
  EXPECT_THROW(parse_diagram("diagram \"x\nend"), ParseError);
  EXPECT_THROW(parse_diagram("inputs: add(1)\ninputs: add(2)\nend"), ParseError);
}

TEST(Dsl, OutOfRangePositionIsAPropagationError) {
  const Diagram d = parse_diagram("inputs: add(1)\n\nmerge @3\nend");
  try {
    propagate(d);
    FAIL();
  } catch (const PropagationError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

#include <gtest/gtest.h>

#include "infodilog/serialize.hpp"
#include "infodilog/suites.hpp"

using namespace infodilog;

namespace {
RunConfig config(std::uint64_t seed, std::size_t trials, Mode mode) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.mode = mode;
  return cfg;
}
}  // namespace

TEST(RunConfig, Validation) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.tolerance = 1e-10;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_THROW(parse_mode("fast"), InputError);
  EXPECT_EQ(parse_mode("exact"), Mode::exact);
}

TEST(Identities, MinimalRunPasses) {
  const auto rep = run_identities(config(0, 1, Mode::exact));
  EXPECT_TRUE(rep.all_passed());
  for (const auto& c : rep.checks) EXPECT_EQ(c.kind, "exact");
}

TEST(Identities, BothModesPass) {
  const auto rep = run_identities(config(7, 300, Mode::both));
  EXPECT_TRUE(rep.all_passed()) << rep.to_json(config(7, 300, Mode::both)).dump(2);
}

TEST(Identities, ReportsAreDeterministicApartFromTimings) {
  const auto cfg = config(42, 50, Mode::both);
  const auto a = run_identities(cfg).to_json(cfg, false).dump();
  const auto b = run_identities(cfg).to_json(cfg, false).dump();
  EXPECT_EQ(a, b);
  const auto c = run_identities(config(43, 50, Mode::both)).to_json(cfg, false);
  EXPECT_EQ(c["checks"].size(), run_identities(cfg).checks.size());
}

TEST(Identities, FailuresCarryReproducibleCounterexamples) {
  Report rep{"t", {}, {}};
  const auto cfg = config(5, 20, Mode::exact);
  const auto r = run_check(rep, cfg, 999, "always_fails_at_3", "exact", std::nullopt, [](Sampler& s) {
    const auto v = s.integer(0, 1000000);
    return TrialOutcome{false, 0.0, {{"v", v}}};
  });
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ((*r.counterexample)["trial"], 0);
  EXPECT_EQ((*r.counterexample)["seed"], 5);
  Sampler again(5, 999, 0);
  EXPECT_EQ((*r.counterexample)["v"], again.integer(0, 1000000));
  EXPECT_FALSE(rep.all_passed());
}

TEST(Deformation, SuitePasses) {
  const auto rep = run_deformation(config(3, 500, Mode::both));
  EXPECT_TRUE(rep.all_passed());
}

TEST(Serialize, Shapes) {
  JExpr e;
  e.add_term(Rational::parse("1/2"), Rational::parse("1/3"), Rational::parse("2/3"));
  EXPECT_EQ(to_json(e).dump(), R"({"terms":[{"c":"1/2","a":"1/3","b":"2/3"}]})");
  EXPECT_EQ(to_json(d_map(beta_symbol(Rational::parse("1/2")))).dump(), R"({"primes":{"2":"-1"}})");
  EXPECT_EQ(to_json(StrandState::mult(3)).dump(), R"({"kind":"mult","value":"3","conorm":"L"})");
  EXPECT_EQ(to_json(StrandState::add(1)).dump(), R"({"kind":"add","value":"1"})");
  const auto r = to_json(deformation_report(2, 4));
  EXPECT_EQ(r["termwise_equal"], true);
  EXPECT_EQ(r["oracle_zero"], true);
  EXPECT_EQ(r["lemmas"]["quot"], true);
  EXPECT_EQ(r["five_term_args"].size(), 5u);
}

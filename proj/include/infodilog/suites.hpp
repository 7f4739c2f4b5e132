#pragma once

/**
 * @file suites.hpp
 * @brief Randomized identity suites shared by the command-line tool.
 *
 * Each check runs a fixed number of seeded trials and records the first
 * counterexample, together with the (seed, trial) pair that reproduces it.
 * Timings are kept apart from the results so that reports compare equal
 * across runs with the same configuration.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infodilog/deformation.hpp"
#include "infodilog/entropy.hpp"
#include "infodilog/random.hpp"
#include "infodilog/serialize.hpp"
#include "infodilog/symbol_algebra.hpp"

namespace infodilog {

enum class Mode { exact, numeric, both };

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "numeric") return Mode::numeric;
  if (s == "both") return Mode::both;
  throw InputError("mode must be exact, numeric or both, got '" + s + "'");
}

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::numeric: return "numeric";
    case Mode::both: return "both";
  }
  return "both";
}

inline constexpr double kDefaultTolerance = 1e-10;

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  LogBase base;
  Mode mode = Mode::both;
  double tolerance = kDefaultTolerance;

  void validate() const {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InputError("tolerance must be a positive real");
    if (trials < 1) throw InputError("trials must be at least 1");
  }

  /// Threshold for a check stated at `nominal` under the default tolerance.
  double scaled(double nominal) const { return nominal * (tolerance / kDefaultTolerance); }

  bool runs_exact() const { return mode != Mode::numeric; }
  bool runs_numeric() const { return mode != Mode::exact; }
};

struct TrialOutcome {
  bool ok = true;
  double error = 0.0;  // numeric checks only
  Json payload;        // inputs and observed values, kept for failures
};

struct CheckResult {
  std::string name;
  std::string kind;  // "exact" or "numeric"
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::optional<double> tolerance;
  double max_error = 0.0;
  std::optional<Json> counterexample;

  bool ok() const { return passed == trials; }

  Json to_json() const {
    Json j = {{"name", name}, {"kind", kind}, {"trials", trials}, {"passed", passed}, {"ok", ok()}};
    if (tolerance) {
      j["tolerance"] = *tolerance;
      j["max_error"] = max_error;
    }
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  std::map<std::string, double> timings_ms;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }

  Json to_json(const RunConfig& cfg, bool with_timings = true) const {
    Json j;
    j["suite"] = suite;
    j["config"] = {{"seed", cfg.seed},
                   {"trials", cfg.trials},
                   {"base", cfg.base.label()},
                   {"mode", mode_name(cfg.mode)},
                   {"tolerance", cfg.tolerance}};
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    j["checks"] = arr;
    j["all_passed"] = all_passed();
    if (with_timings) {
      Json t = Json::object();
      for (const auto& [k, v] : timings_ms) t[k] = v;
      j["timings_ms"] = t;
    }
    return j;
  }
};

using TrialFn = std::function<TrialOutcome(Sampler&)>;

/// Runs `trials` independent trials; stream separates checks sharing a seed.
inline CheckResult run_check(Report& report, const RunConfig& cfg, std::uint64_t stream, std::string name,
                             std::string kind, std::optional<double> tolerance, const TrialFn& trial) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r{std::move(name), std::move(kind), cfg.trials, 0, tolerance, 0.0, std::nullopt};
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Sampler s(cfg.seed, stream, i);
    TrialOutcome out;
    try {
      out = trial(s);
    } catch (const std::exception& e) {
      out.ok = false;
      out.payload = {{"exception", e.what()}};
    }
    if (tolerance) {
      out.ok = out.ok && std::isfinite(out.error) && out.error <= *tolerance;
      if (std::isfinite(out.error)) r.max_error = std::max(r.max_error, out.error);
    }
    if (out.ok) {
      ++r.passed;
    } else if (!r.counterexample) {
      Json ce = out.payload;
      ce["seed"] = cfg.seed;
      ce["trial"] = i;
      if (tolerance) ce["error"] = out.error;
      r.counterexample = std::move(ce);
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.timings_ms[r.name] = std::chrono::duration<double, std::milli>(elapsed).count();
  report.checks.push_back(r);
  return r;
}

namespace suites {

inline JointTable to_table(const RationalMatrix& p) {
  std::vector<std::vector<double>> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (const auto& v : p[i]) d[i].push_back(v.to_double());
  return JointTable(std::move(d));
}

inline Json rationals_json(std::initializer_list<std::pair<const char*, const Rational*>> vals) {
  Json j = Json::object();
  for (const auto& [k, v] : vals) j[k] = v->str();
  return j;
}

/// <a,b+c> + <b,c> - <a+b,c> - <a,b>.
inline JExpr cocycle_combination(const Rational& a, const Rational& b, const Rational& c) {
  JExpr e;
  e.add_term(Rational(1), a, b + c);
  e.add_term(Rational(1), b, c);
  e.add_term(Rational(-1), a + b, c);
  e.add_term(Rational(-1), a, b);
  return e;
}

struct Triple {
  Rational a, b, c;
};

/// a, b, c with every symbol in the cocycle combination non-degenerate.
inline Triple cocycle_triple(Sampler& s, std::int64_t max_num = 200) {
  for (;;) {
    Rational a = s.rational(max_num), b = s.rational(max_num), c = s.rational(max_num);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    if ((a + b).is_zero() || (b + c).is_zero() || (a + b + c).is_zero()) continue;
    return {a, b, c};
  }
}

/// a outside {0,1}, b outside {0,1}, a != b.
inline std::pair<Rational, Rational> deformable_pair(Sampler& s) {
  Rational a = s.off_unit();
  Rational b = s.rational_where([&](const Rational& r) { return !r.is_zero() && !r.is_one() && r != a; });
  return {a, b};
}

inline BetaExpr random_beta(Sampler& s) {
  BetaExpr e;
  const auto terms = s.integer(1, 4);
  for (std::int64_t k = 0; k < terms; ++k) e.add_term(s.nonzero(), s.nonzero());
  return e;
}

inline void exact_symbol_checks(Report& rep, const RunConfig& cfg) {
  run_check(rep, cfg, 101, "cocycle", "exact", std::nullopt, [](Sampler& s) {
    auto [a, b, c] = cocycle_triple(s);
    const auto image = chi(cocycle_combination(a, b, c));
    return TrialOutcome{image.empty(), 0.0, {{"a", a.str()}, {"b", b.str()}, {"c", c.str()}, {"chi", to_json(image)}}};
  });
  run_check(rep, cfg, 102, "four_term_beta", "exact", std::nullopt, [](Sampler& s) {
    auto [a, b] = deformable_pair(s);
    const auto image = d_map(four_term_element(a, b));
    return TrialOutcome{image.empty(), 0.0, {{"a", a.str()}, {"b", b.str()}, {"d_map", to_json(image)}}};
  });
  run_check(rep, cfg, 103, "chi_symmetry", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.rational(), b = s.rational();
    const bool ok = chi(j_symbol(a, b)) == chi(j_symbol(b, a));
    return TrialOutcome{ok, 0.0, {{"a", a.str()}, {"b", b.str()}}};
  });
  run_check(rep, cfg, 104, "beta_to_j_round_trip", "exact", std::nullopt, [](Sampler& s) {
    const BetaExpr e = random_beta(s);
    const bool ok = chi(beta_to_j(e)) == d_map(e);
    return TrialOutcome{ok, 0.0, {{"expr", to_json(e)}}};
  });
  run_check(rep, cfg, 105, "bracket_reflection", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.off_unit();
    const bool ok = d_map(beta_symbol(a)) == d_map(beta_symbol(Rational(1) - a));
    return TrialOutcome{ok, 0.0, {{"a", a.str()}}};
  });
  run_check(rep, cfg, 106, "bracket_inversion", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.off_unit();
    const bool ok = d_map(beta_symbol(a.inv(), a) + beta_symbol(a)).empty();
    return TrialOutcome{ok, 0.0, {{"a", a.str()}}};
  });
  run_check(rep, cfg, 107, "scaling", "exact", std::nullopt, [](Sampler& s) {
    Rational c = s.nonzero(), a = s.rational(), b = s.rational();
    const auto image = chi(j_symbol(c * a, c * b) - c * j_symbol(a, b));
    return TrialOutcome{image.empty(), 0.0, {{"c", c.str()}, {"a", a.str()}, {"b", b.str()}}};
  });
}

inline void numeric_entropy_checks(Report& rep, const RunConfig& cfg) {
  const LogBase base = cfg.base;
  run_check(rep, cfg, 201, "zero_symbols_evaluate_to_zero", "numeric", cfg.tolerance, [base](Sampler& s) {
    auto [a, b, c] = cocycle_triple(s, 100);
    const JExpr e = cocycle_combination(a, b, c);
    TrialOutcome o{is_zero(e), std::fabs(eval_entropy_real(e, base)), {}};
    o.payload = {{"a", a.str()}, {"b", b.str()}, {"c", c.str()}};
    return o;
  });
  run_check(rep, cfg, 202, "h_reflection", "numeric", cfg.scaled(1e-12), [base](Sampler& s) {
    const double a = s.uniform(-3.0, 4.0);
    return TrialOutcome{true, std::fabs(h_extended(a, base) - h_extended(1.0 - a, base)), {{"a", a}}};
  });
  run_check(rep, cfg, 203, "h_inversion", "numeric", cfg.tolerance, [base](Sampler& s) {
    double a = 0.0;
    while (std::fabs(a) < 1e-3) a = s.uniform(-10.0, 10.0);
    const double lhs = h_extended(1.0 / a, base);
    const double rhs = -h_extended(a, base) / a;
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    return TrialOutcome{true, std::fabs(lhs - rhs) / scale, {{"a", a}}};
  });
  run_check(rep, cfg, 204, "four_term_entropy", "numeric", cfg.tolerance, [base](Sampler& s) {
    double p = 0.0, q = 0.0;
    do {
      p = s.uniform(-2.0, 3.0);
      q = s.uniform(-2.0, 3.0);
    } while (std::fabs(p) < kSingularGuard || std::fabs(1.0 - p) < kSingularGuard || std::fabs(p - q) < kSingularGuard);
    return TrialOutcome{true, std::fabs(four_term_residual(p, q, base)), {{"p", p}, {"q", q}}};
  });
  run_check(rep, cfg, 205, "chain_decomposition", "numeric", std::nullopt, [base, &cfg](Sampler& s) {
    const auto n = static_cast<std::size_t>(s.integer(2, 8));
    const auto p = s.distribution(n);
    const double err = std::fabs(shannon(Distribution::from_rationals(p), base) -
                                 eval_entropy_real(chain_decompose(p), base));
    TrialOutcome o{err <= cfg.scaled(1e-12) * static_cast<double>(n), err, {}};
    for (const auto& x : p) o.payload["p"].push_back(x.str());
    return o;
  });
  run_check(rep, cfg, 206, "joint_decomposition", "numeric", std::nullopt, [base, &cfg](Sampler& s) {
    const auto n = static_cast<std::size_t>(s.integer(1, 4));
    const auto m = static_cast<std::size_t>(s.integer(1, 4));
    const auto p = s.table(n, m);
    const double err =
        std::fabs(joint_entropy(to_table(p), base) - eval_entropy_real(joint_decompose(p), base));
    TrialOutcome o{err <= cfg.scaled(1e-12) * static_cast<double>(n * m), err, {}};
    o.payload["rows"] = n;
    o.payload["cols"] = m;
    return o;
  });
  run_check(rep, cfg, 207, "chain_rule", "numeric", cfg.scaled(1e-12), [base](Sampler& s) {
    const auto t = to_table(s.table(static_cast<std::size_t>(s.integer(1, 5)), static_cast<std::size_t>(s.integer(1, 5))));
    const double hx = shannon(Distribution(t.row_marginal()), base);
    const double err = std::fabs(joint_entropy(t, base) - conditional_entropy(t, Given::x, base) - hx);
    return TrialOutcome{true, err, {{"rows", t.rows()}, {"cols", t.cols()}}};
  });
  run_check(rep, cfg, 208, "conditional_two_formulas", "numeric", cfg.scaled(1e-12), [base](Sampler& s) {
    const auto t = to_table(s.table(static_cast<std::size_t>(s.integer(1, 5)), static_cast<std::size_t>(s.integer(1, 5))));
    const double err = std::max(
        std::fabs(conditional_entropy(t, Given::y, base) - conditional_entropy_direct(t, Given::y, base)),
        std::fabs(conditional_entropy(t, Given::x, base) - conditional_entropy_direct(t, Given::x, base)));
    return TrialOutcome{true, err, {{"rows", t.rows()}, {"cols", t.cols()}}};
  });
  run_check(rep, cfg, 209, "mutual_information_formulas", "numeric", cfg.scaled(1e-12), [base](Sampler& s) {
    const auto t = to_table(s.table(static_cast<std::size_t>(s.integer(1, 5)), static_cast<std::size_t>(s.integer(1, 5))));
    const auto mi = mutual_information_all(t, base);
    const double err = std::max({std::fabs(mi.from_marginals - mi.from_conditional),
                                 std::fabs(mi.from_conditional - mi.from_joint),
                                 std::fabs(mi.from_marginals - mi.from_joint)});
    return TrialOutcome{true, err, {{"rows", t.rows()}, {"cols", t.cols()}}};
  });
  run_check(rep, cfg, 210, "flattened_three_variables", "numeric", cfg.scaled(1e-12), [base](Sampler& s) {
    const auto p = s.distribution(8);
    std::vector<double> flat;
    double direct = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          const double v = p[i * 4 + j * 2 + k].to_double();
          flat.push_back(v);
          direct -= v * std::log(v);
        }
    const double err = std::fabs(joint_entropy(JointTable::flattened(flat), base) - base.from_nats(direct));
    return TrialOutcome{true, err, {}};
  });
  run_check(rep, cfg, 211, "defect_symmetry", "numeric", cfg.tolerance, [base](Sampler& s) {
    double p = 0.0, q = 0.0;
    do {
      p = s.uniform(-2.0, 3.0);
      q = s.uniform(-2.0, 3.0);
    } while (std::fabs(1.0 - p) < kSingularGuard || std::fabs(1.0 - q) < kSingularGuard || std::fabs(p - q) < kSingularGuard);
    const auto r = defect_symmetry_residuals(p, q, base);
    return TrialOutcome{true, std::max(std::fabs(r.first_residual()), std::fabs(r.second_residual())),
                        {{"p", p}, {"q", q}}};
  });
}

inline void deformation_checks(Report& rep, const RunConfig& cfg) {
  run_check(rep, cfg, 301, "deform_five_term", "exact", std::nullopt, [](Sampler& s) {
    auto [a, b] = deformable_pair(s);
    const auto r = deformation_report(a, b);
    return TrialOutcome{r.termwise_equal && r.oracle_zero, 0.0, to_json(r)};
  });
  run_check(rep, cfg, 302, "dual_lemmas", "exact", std::nullopt, [](Sampler& s) {
    auto [a, b] = deformable_pair(s);
    const auto r = check_dual_lemmas(a, b);
    return TrialOutcome{r.all(), 0.0, {{"a", a.str()}, {"b", b.str()}, {"lemmas", to_json(r)}}};
  });
  run_check(rep, cfg, 303, "sigma_equivariance", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.off_unit(), b = s.rational(), c = s.nonzero();
    const bool ok = sigma_section(a, c * b) == c * sigma_section(a, b);
    return TrialOutcome{ok, 0.0, {{"a", a.str()}, {"b", b.str()}, {"c", c.str()}}};
  });
  run_check(rep, cfg, 304, "rho_phi_equals_d", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.off_unit();
    const bool ok = rho(a, a * (Rational(1) - a)) == d_map(beta_symbol(a));
    return TrialOutcome{ok, 0.0, {{"a", a.str()}}};
  });
  run_check(rep, cfg, 305, "linearize_constants", "exact", std::nullopt, [](Sampler& s) {
    Rational c = s.rational();
    PExpr<DualNumber> e;
    e.add_term_unchecked(Rational(1), DualNumber(c));
    return TrialOutcome{linearize(e).empty(), 0.0, {{"c", c.str()}}};
  });
  run_check(rep, cfg, 306, "tangent_additivity", "exact", std::nullopt, [](Sampler& s) {
    Rational a = s.off_unit(), b = s.rational(), b2 = s.rational();
    PExpr<DualNumber> e;
    e.add_term(Rational(1), DualNumber(a, b + b2));
    e.add_term(Rational(1), DualNumber(a));
    e.add_term(Rational(-1), DualNumber(a, b));
    e.add_term(Rational(-1), DualNumber(a, b2));
    return TrialOutcome{linearize(e).empty(), 0.0, {{"a", a.str()}, {"b", b.str()}, {"b2", b2.str()}}};
  });
}

}  // namespace suites

/// Symbol-algebra and entropy identities selected by cfg.mode.
inline Report run_identities(const RunConfig& cfg) {
  cfg.validate();
  Report rep{"identities", {}, {}};
  if (cfg.runs_exact()) suites::exact_symbol_checks(rep, cfg);
  if (cfg.runs_numeric()) suites::numeric_entropy_checks(rep, cfg);
  return rep;
}

inline Report run_deformation(const RunConfig& cfg) {
  cfg.validate();
  Report rep{"deform", {}, {}};
  suites::deformation_checks(rep, cfg);
  return rep;
}

}  // namespace infodilog

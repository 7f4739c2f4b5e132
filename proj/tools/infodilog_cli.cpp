// Batch front end: identity suites, entropy tables, diagram files and
// deformation checks. Exit codes: 0 all checks pass, 1 a check failed or a
// diagram did not parse or propagate, 2 bad input or flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infodilog/infodilog.hpp"

namespace {

using namespace infodilog;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string base = "e";
  std::string mode = "both";
  double tolerance = kDefaultTolerance;
  std::string json_path;

  RunConfig config() const {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.base = LogBase::parse(base);
    cfg.mode = parse_mode(mode);
    cfg.tolerance = tolerance;
    cfg.validate();
    return cfg;
  }
};

void emit_json(const GlobalFlags& g, const Json& j) {
  if (g.json_path.empty()) return;
  const std::string text = j.dump(2) + "\n";
  if (g.json_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.json_path);
  if (!out) throw InputError("cannot write JSON report to '" + g.json_path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Probabilities must lie in [0,1] and add up to 1.
void require_probabilities(const std::vector<Rational>& ps, const char* what) {
  Rational sum;
  for (const auto& p : ps) {
    if (p.sign() < 0 || p > Rational(1)) throw InputError(std::string(what) + " entry " + p.str() + " is not in [0, 1]");
    sum += p;
  }
  if (sum != Rational(1) && std::fabs(sum.to_double() - 1.0) > kNormalizationTolerance) {
    throw InputError(std::string(what) + " sums to " + sum.str() + ", not 1");
  }
}

void print_report(const Report& rep) {
  for (const auto& c : rep.checks) {
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.name << " " << c.passed << "/" << c.trials;
    if (c.tolerance) std::cout << " max_error=" << fmt_double(c.max_error) << " tol=" << fmt_double(*c.tolerance);
    std::cout << "\n";
    if (c.counterexample) std::cout << "  counterexample: " << c.counterexample->dump() << "\n";
  }
  std::cout << (rep.all_passed() ? "all checks passed" : "some checks failed") << "\n";
}

int cmd_identities(const GlobalFlags& g) {
  const RunConfig cfg = g.config();
  const Report rep = run_identities(cfg);
  print_report(rep);
  emit_json(g, rep.to_json(cfg));
  return rep.all_passed() ? kOk : kCheckFailed;
}

int cmd_entropy(const GlobalFlags& g, const std::string& dist, bool decompose) {
  const RunConfig cfg = g.config();
  std::vector<Rational> ps;
  std::stringstream ss(dist);
  for (std::string cell; std::getline(ss, cell, ',');) ps.push_back(Rational::parse(trim(cell)));
  if (ps.empty()) throw InputError("empty distribution");
  require_probabilities(ps, "distribution");

  const Distribution d = Distribution::from_rationals(ps);
  const double h = shannon(d, cfg.base);
  std::cout << "H = " << fmt_double(h) << " (base " << cfg.base.label() << ")\n";

  Json j;
  j["distribution"] = Json::array();
  for (const auto& p : ps) j["distribution"].push_back(p.str());
  j["base"] = cfg.base.label();
  j["entropy"] = h;
  bool ok = true;
  if (decompose) {
    Json terms = Json::array();
    JExpr total;
    Rational running = ps[0];
    for (std::size_t k = 1; k < ps.size(); ++k) {
      const JExpr term = j_symbol(running, ps[k]);
      const double v = eval_entropy_real(term, cfg.base);
      std::cout << "  <" << running << "," << ps[k] << "> = " << fmt_double(v) << "\n";
      terms.push_back({{"a", running.str()}, {"b", ps[k].str()}, {"value", v}});
      total += term;
      running += ps[k];
    }
    const double sum = eval_entropy_real(total, cfg.base);
    const double residual = std::fabs(sum - h);
    ok = residual <= cfg.scaled(1e-12) * static_cast<double>(ps.size());
    std::cout << "sum of terms = " << fmt_double(sum) << ", residual = " << fmt_double(residual) << "\n";
    j["decomposition"] = {{"terms", terms}, {"sum", sum}, {"residual", residual}, {"ok", ok}};
  }
  emit_json(g, j);
  return ok ? kOk : kCheckFailed;
}

RationalMatrix read_csv_table(const std::string& path) {
  const std::string text = read_file(path);
  RationalMatrix rows;
  std::stringstream lines(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<Rational> row;
    std::stringstream cells(line);
    std::size_t col = 0;
    for (std::string cell; std::getline(cells, cell, ',');) {
      ++col;
      try {
        row.push_back(Rational::parse(trim(cell)));
      } catch (const InputError& e) {
        throw InputError(path + ": row " + std::to_string(line_no) + ", column " + std::to_string(col) + ": " +
                         e.what());
      }
      if (row.back().sign() < 0) {
        throw InputError(path + ": row " + std::to_string(line_no) + ", column " + std::to_string(col) +
                         ": negative probability " + row.back().str());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(path + ": row " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                       " columns, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": no rows");
  std::vector<Rational> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  require_probabilities(flat, "joint table");
  return rows;
}

int cmd_joint(const GlobalFlags& g, const std::string& path) {
  const RunConfig cfg = g.config();
  const RationalMatrix p = read_csv_table(path);
  const JointTable t = suites::to_table(p);
  const LogBase& base = cfg.base;

  const double hxy = joint_entropy(t, base);
  const double hx = shannon(Distribution(t.row_marginal()), base);
  const double hy = shannon(Distribution(t.col_marginal()), base);
  const double hx_y = conditional_entropy(t, Given::y, base, Strictness::lenient);
  const double hy_x = conditional_entropy(t, Given::x, base, Strictness::lenient);
  const auto mi = mutual_information_all(t, base);
  const double decomposition_residual = std::fabs(eval_entropy_real(joint_decompose(p), base) - hxy);
  const double chain_rule_residual = std::fabs(hxy - hy_x - hx);
  const double mi_spread = std::max({std::fabs(mi.from_marginals - mi.from_conditional),
                                     std::fabs(mi.from_conditional - mi.from_joint),
                                     std::fabs(mi.from_marginals - mi.from_joint)});
  const double cells = static_cast<double>(t.rows() * t.cols());
  const bool ok = decomposition_residual <= cfg.scaled(1e-12) * cells && chain_rule_residual <= cfg.scaled(1e-12) &&
                  mi_spread <= cfg.scaled(1e-12);

  std::cout << "H(X,Y) = " << fmt_double(hxy) << "\n"
            << "H(X) = " << fmt_double(hx) << "\n"
            << "H(Y) = " << fmt_double(hy) << "\n"
            << "H(X|Y) = " << fmt_double(hx_y) << "\n"
            << "H(Y|X) = " << fmt_double(hy_x) << "\n"
            << "I(X;Y) = " << fmt_double(mi.from_marginals) << "\n"
            << "decomposition residual = " << fmt_double(decomposition_residual) << "\n"
            << "chain rule residual = " << fmt_double(chain_rule_residual) << "\n"
            << (ok ? "all checks passed" : "some checks failed") << " (base " << base.label() << ")\n";

  emit_json(g, {{"base", base.label()},
                {"rows", t.rows()},
                {"cols", t.cols()},
                {"joint_entropy", hxy},
                {"entropy_x", hx},
                {"entropy_y", hy},
                {"conditional_x_given_y", hx_y},
                {"conditional_y_given_x", hy_x},
                {"mutual_information",
                 {{"from_marginals", mi.from_marginals},
                  {"from_conditional", mi.from_conditional},
                  {"from_joint", mi.from_joint}}},
                {"decomposition", to_json(joint_decompose(p))},
                {"residuals",
                 {{"decomposition", decomposition_residual},
                  {"chain_rule", chain_rule_residual},
                  {"mutual_information_spread", mi_spread}}},
                {"ok", ok}});
  return ok ? kOk : kCheckFailed;
}

int cmd_diagram(const GlobalFlags& g, const std::vector<std::string>& files, bool wall, bool check_invariance) {
  const RunConfig cfg = g.config();
  if (check_invariance && files.size() != 2) throw InputError("--check-invariance needs exactly two files");

  std::vector<Diagram> diagrams;
  for (const auto& f : files) {
    const std::string text = read_file(f);
    try {
      diagrams.push_back(parse_diagram(text));
    } catch (const ParseError& e) {
      for (const auto& d : e.diagnostics()) std::cerr << f << ":" << d.str() << "\n";
      return kCheckFailed;
    }
  }

  Json reports = Json::array();
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    EvalResult r;
    try {
      r = evaluate(diagrams[i], cfg.base, wall);
    } catch (const PropagationError& e) {
      std::cerr << files[i] << ": propagation error: " << e.what() << "\n";
      return kCheckFailed;
    }
    const std::string& name = diagrams[i].name.empty() ? files[i] : diagrams[i].name;
    std::cout << "diagram " << name << "\n"
              << "  invariant: " << r.invariant.str() << " (" << r.invariant.size() << " terms)\n"
              << "  outputs:";
    for (const auto& s : r.outputs) std::cout << " " << s.str();
    std::cout << "\n  entropy: " << fmt_double(r.entropy_value) << " (base " << cfg.base.label() << ")\n";
    if (r.wall_defects) std::cout << "  wall defects: " << r.wall_defects->str() << "\n";
    Json j = to_json(r);
    j["name"] = name;
    reports.push_back(std::move(j));
  }

  if (!check_invariance) {
    emit_json(g, reports.size() == 1 ? reports[0] : Json{{"diagrams", reports}});
    return kOk;
  }
  const bool boundaries_match = boundary_signature(diagrams[0]) == boundary_signature(diagrams[1]);
  const bool chi_equal = chi(jmath(diagrams[0])) == chi(jmath(diagrams[1]));
  std::cout << "boundaries match: " << (boundaries_match ? "true" : "false") << "\n"
            << "chi-equal: " << (chi_equal ? "true" : "false") << "\n";
  emit_json(g, {{"diagrams", reports}, {"invariance", {{"boundaries_match", boundaries_match}, {"chi_equal", chi_equal}}}});
  return boundaries_match && chi_equal ? kOk : kCheckFailed;
}

int cmd_deform(const GlobalFlags& g, const std::optional<std::string>& a_text, const std::optional<std::string>& b_text) {
  const RunConfig cfg = g.config();
  if (a_text.has_value() != b_text.has_value()) throw InputError("deform needs both --a and --b, or neither");
  if (!a_text) {
    const Report rep = run_deformation(cfg);
    print_report(rep);
    emit_json(g, rep.to_json(cfg));
    return rep.all_passed() ? kOk : kCheckFailed;
  }
  const Rational a = Rational::parse(*a_text);
  const Rational b = Rational::parse(*b_text);
  DeformationReport r;
  try {
    r = deformation_report(a, b);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  auto yes = [](bool v) { return v ? "true" : "false"; };
  std::cout << "five-term arguments: " << r.five_term_args.str() << "\n"
            << "linearized: " << r.linearized.str() << "\n"
            << "four-term element: " << r.four_term.str() << "\n"
            << "lemmas: quot=" << yes(r.lemmas.quot) << " diff_quot=" << yes(r.lemmas.diff_quot)
            << " add_mult_inv=" << yes(r.lemmas.add_mult_inv) << " add_mult_inv_quot=" << yes(r.lemmas.add_mult_inv_quot)
            << "\n"
            << "termwise_equal=" << yes(r.termwise_equal) << "\n"
            << "oracle_zero=" << yes(r.oracle_zero) << "\n";
  emit_json(g, to_json(r));
  return r.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy, symbol algebra and diagram checks over the rationals"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--trials", g.trials, "Trials per randomized check");
  app.add_option("--base", g.base, "Logarithm base: e, 2, 10 or a real > 1");
  app.add_option("--mode", g.mode, "exact, numeric or both");
  app.add_option("--tolerance", g.tolerance, "Numeric tolerance (the default 1e-10 scales all thresholds)");
  app.add_option("--json", g.json_path, "Write a JSON report to this path ('-' for standard output)");

  auto* identities = app.add_subcommand("identities", "Run the randomized identity suites");

  auto* entropy = app.add_subcommand("entropy", "Entropy of a distribution");
  std::string dist;
  bool decompose = false;
  entropy->add_option("--dist", dist, "Comma-separated probabilities, decimal or p/q")->required();
  entropy->add_flag("--decompose", decompose, "Show the chain decomposition into symbols");

  auto* joint = app.add_subcommand("joint", "Joint, conditional entropy and mutual information from a CSV table");
  std::string csv;
  joint->add_option("file", csv, "CSV file, rows = X outcomes, columns = Y outcomes")->required();

  auto* diagram = app.add_subcommand("diagram", "Evaluate diagram files");
  std::vector<std::string> files;
  bool wall = false;
  bool check_invariance = false;
  diagram->add_option("files", files, "One or two diagram files")->required()->expected(1, 2);
  diagram->add_flag("--wall", wall, "Absorb all vertices into a boundary wall");
  diagram->add_flag("--check-invariance", check_invariance, "Compare two diagrams with the same boundary");

  auto* deform = app.add_subcommand("deform", "Deformation of the five-term relation");
  std::optional<std::string> a_text;
  std::optional<std::string> b_text;
  deform->add_option("--a", a_text, "First base point");
  deform->add_option("--b", b_text, "Second base point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*identities) return cmd_identities(g);
    if (*entropy) return cmd_entropy(g, dist, decompose);
    if (*joint) return cmd_joint(g, csv);
    if (*diagram) return cmd_diagram(g, files, wall, check_invariance);
    if (*deform) return cmd_deform(g, a_text, b_text);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kInputError;
  } catch (const PropagationError& e) {
    std::cerr << "propagation error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}

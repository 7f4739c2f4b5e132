#pragma once

// JSON shapes for reports. Rationals are written as strings ("-3/4") so
// that values survive a round trip exactly.

#include <json.hpp>

#include "infodilog/deformation.hpp"
#include "infodilog/diagram.hpp"
#include "infodilog/symbol_algebra.hpp"

namespace infodilog {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const JExpr& e) {
  Json terms = Json::array();
  for (const auto& [k, c] : e.terms()) terms.push_back({{"c", c.str()}, {"a", k.first.str()}, {"b", k.second.str()}});
  return {{"terms", terms}};
}

inline Json to_json(const BetaExpr& e) {
  Json terms = Json::array();
  for (const auto& [a, c] : e.terms()) terms.push_back({{"c", c.str()}, {"a", a.str()}});
  return {{"terms", terms}};
}

inline Json to_json(const TensorCanonical& t) {
  Json primes = Json::object();
  for (const auto& [p, c] : t.primes()) primes[p.str()] = c.str();
  return {{"primes", primes}};
}

inline Json to_json(const DualNumber& d) { return {{"re", d.re().str()}, {"t", d.eps().str()}}; }

inline Json to_json(const StrandState& s) {
  Json j = {{"kind", s.is_additive() ? "add" : "mult"}, {"value", s.value.str()}};
  if (!s.is_additive()) j["conorm"] = s.conorm == Conorm::L ? "L" : "R";
  return j;
}

inline Json to_json(const StrandList& list) {
  Json out = Json::array();
  for (const auto& s : list) out.push_back(to_json(s));
  return out;
}

inline Json to_json(const EvalResult& r) {
  Json j;
  j["invariant"] = to_json(r.invariant);
  j["outputs"] = to_json(r.outputs);
  j["entropy"] = {{"base", r.base.label()}, {"value", r.entropy_value}};
  if (r.wall_defects) j["wall_defects"] = to_json(*r.wall_defects);
  return j;
}

inline Json to_json(const DualLemmaReport& r) {
  return {{"quot", r.quot}, {"diff_quot", r.diff_quot}, {"add_mult_inv", r.add_mult_inv},
          {"add_mult_inv_quot", r.add_mult_inv_quot}};
}

inline Json to_json(const PExpr<DualNumber>& e) {
  Json out = Json::array();
  for (const auto& t : e.terms()) out.push_back({{"c", t.coeff.str()}, {"z", to_json(t.arg)}});
  return out;
}

inline Json to_json(const DeformationReport& r) {
  return {{"a", r.a.str()},
          {"b", r.b.str()},
          {"lemmas", to_json(r.lemmas)},
          {"five_term_args", to_json(r.five_term_args)},
          {"linearized", to_json(r.linearized)},
          {"four_term", to_json(r.four_term)},
          {"termwise_equal", r.termwise_equal},
          {"oracle_zero", r.oracle_zero}};
}

}  // namespace infodilog

/*
 * Copyright 2026 The Samelson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SAMELSON_JSON_IO_HPP
#define SAMELSON_JSON_IO_HPP

// JSON records for reports, case results, table rows and check suites.
// Keys are emitted in a fixed order (ordered_json) and polynomials as their
// canonical text, so equal inputs give byte-identical output.  The schema is
// described in docs/json-schema.md.

#include <optional>
#include <string>

#include "json.hpp"
#include "samelson/goldens.hpp"
#include "samelson/samelson.hpp"
#include "samelson/verify.hpp"

namespace samelson {

using Json = nlohmann::ordered_json;

inline Json polynomial_to_json(const Polynomial& f) { return to_string(f); }

/// Inverse of polynomial_to_json in the given ring.
inline Polynomial polynomial_from_json(const RingPtr& ring, const Json& j) {
  if (!j.is_string()) throw ParseError("polynomial must be a JSON string");
  return parse_polynomial(ring, j.get<std::string>());
}

inline Json product_to_json(Product pr) { return product_name(pr); }

inline Json pair_to_json(const SamelsonReport& rep, const PairVerdict& pv) {
  Json j;
  j["group"] = group_name(rep.group);
  j["prime"] = rep.prime;
  j["i"] = pv.i;
  j["j"] = pv.j;
  j["verdict"] = verdict_name(pv.verdict);
  if (pv.lambda) j["lambda_values"] = Json::array({*pv.lambda});
  j["provenance"] = pv.provenance;
  j["partner_k"] = pv.k ? Json(*pv.k) : Json(nullptr);
  j["supporting"] = pv.supporting;
  return j;
}

inline Json candidate_to_json(const CandidateOutcome& o) {
  Json j;
  j["product"] = product_to_json(o.product);
  j["status"] = lambda_status_name(o.status);
  if (o.value) j["lambda"] = *o.value;
  if (o.displayed) j["displayed"] = *o.displayed;
  j["involves_unknown"] = o.involves_unknown;
  if (o.listed_status) j["status_under_listed_ideals"] = lambda_status_name(*o.listed_status);
  return j;
}

inline Json followup_to_json(const FollowupResult& f) {
  Json j;
  j["ideal"] = f.ideal;
  auto opt_poly = [](const std::optional<Polynomial>& p) { return p ? polynomial_to_json(*p) : Json(nullptr); };
  j["x60_computed"] = opt_poly(f.x60_computed);
  j["x60_displayed"] = opt_poly(f.x60_displayed);
  j["alpha_beta"] = f.alpha_beta ? Json::array({f.alpha_beta->first, f.alpha_beta->second}) : Json(nullptr);
  j["alpha_beta_displayed"] = Json::array({f.alpha_beta_displayed.first, f.alpha_beta_displayed.second});
  j["p1_x48"] = opt_poly(f.p1_x48);
  j["p1p1_x48"] = opt_poly(f.p1p1_x48);
  j["lambda_plus_one"] = f.lambda_plus_one ? Json(*f.lambda_plus_one) : Json(nullptr);
  j["lambda_plus_one_displayed"] =
      f.lambda_plus_one_displayed ? Json(*f.lambda_plus_one_displayed) : Json(nullptr);
  return j;
}

inline Json case_to_json(const CaseResult& r) {
  Json j;
  j["id"] = r.spec.id;
  j["group"] = group_name(r.spec.group);
  j["prime"] = r.spec.prime;
  j["k"] = r.spec.k;
  j["restriction"] = r.spec.restriction;
  j["addendum"] = r.spec.addendum;
  j["external"] = r.spec.external;
  Json ideals = Json::array();
  for (const auto& run : r.ideals) {
    Json ij;
    ij["expression"] = run.expression;
    ij["supplementary"] = run.supplementary;
    if (run.lhs) ij["lhs"] = polynomial_to_json(*run.lhs);
    if (run.refusal) ij["refusal"] = *run.refusal;
    ideals.push_back(ij);
  }
  j["ideals"] = ideals;
  j["system"] = {{"unknowns", r.unknowns}, {"equations", r.equations}, {"rank", r.rank}, {"consistent", r.consistent}};
  Json cands = Json::array();
  for (const auto& o : r.candidates) cands.push_back(candidate_to_json(o));
  j["candidates"] = cands;
  if (r.followup) j["followup"] = followup_to_json(*r.followup);
  Json disc = Json::array();
  for (const auto& d : r.discrepancies) disc.push_back({{"kind", d.kind}, {"message", d.message}});
  j["discrepancies"] = disc;
  return j;
}

inline Json report_to_json(const SamelsonReport& rep, bool with_cases = false) {
  Json j;
  j["group"] = group_name(rep.group);
  j["prime"] = rep.prime;
  j["nontrivial"] = rep.nontrivial_count();
  j["discrepancy"] = rep.discrepancy;
  j["discrepancies"] = rep.discrepancies;
  Json pairs = Json::array();
  for (const auto& pv : rep.pairs) pairs.push_back(pair_to_json(rep, pv));
  j["pairs"] = pairs;
  if (with_cases) {
    Json cases = Json::array();
    for (const auto& c : rep.cases) cases.push_back(case_to_json(c));
    j["cases"] = cases;
  }
  return j;
}

/// One computed table row; exactly one of polynomial and refusal is set.
struct TableEntry {
  int k = 0;
  int power = 1;
  std::string ideal;
  std::optional<Polynomial> polynomial;
  std::optional<std::string> refusal;
};

inline Json table_entry_to_json(const TableEntry& e) {
  Json j;
  j["k"] = e.k;
  j["operation"] = "P" + std::to_string(e.power);
  j["ideal"] = e.ideal;
  if (e.polynomial) j["polynomial"] = polynomial_to_json(*e.polynomial);
  if (e.refusal) j["refusal"] = *e.refusal;
  return j;
}

inline Json suite_to_json(const SuiteResult& s) {
  Json j;
  j["suite"] = s.name;
  j["prime"] = s.prime;
  j["passed"] = s.passed();
  j["total"] = s.checks.size();
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    Json cj{{"label", c.label}, {"pass", c.pass}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

inline Json golden_outcome_to_json(const GoldenOutcome& o) {
  Json j;
  j["key"] = o.key;
  j["where"] = o.where;
  j["status"] = golden_status_name(o.status);
  j["verbatim_match"] = o.verbatim_match;
  j["computed"] = o.computed;
  j["expected"] = o.expected;
  if (!o.detail.empty()) j["detail"] = o.detail;
  return j;
}

}  // namespace samelson

#endif  // SAMELSON_JSON_IO_HPP

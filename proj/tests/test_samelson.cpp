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

#include <catch_amalgamated.hpp>

#include "samelson/samelson.hpp"

using namespace samelson;

namespace {

const CaseSpec& spec_of(const std::string& id, Residue p) {
  static std::vector<CaseSpec> specs = all_case_specs();
  for (const auto& cs : specs)
    if (cs.id == id && cs.prime == p) return cs;
  FAIL("no case " << id << " at " << p);
  throw;
}

// Independent residual: NF(P1 x_k) - sum lambda * NF(x_a x_b) in the first
// listed ideal, using the engine's lambdas and nothing else from the engine.
Polynomial residual(const CaseResult& r) {
  const GroupModel& gm = group_model(r.spec.group, r.spec.prime);
  IdealSpec ideal = parse_ideal(gm, r.spec.ideals.front());
  Polynomial res = p1_table(gm, r.spec.k, ideal);
  for (const auto& o : r.candidates) {
    REQUIRE(o.value);
    res -= normal_form((gm.image(o.product.first) * gm.image(o.product.second)).scaled(*o.value), ideal);
  }
  return normal_form(res, ideal);
}

}  // namespace

TEST_CASE("partner enumeration", "[samelson]") {
  auto g7 = enumerate_partners(Group::G2, 7);
  REQUIRE(g7.size() == 2);
  CHECK((g7[0].i == 2 && g7[0].j == 6 && g7[0].k == 2));
  CHECK((g7[1].i == 6 && g7[1].j == 6 && g7[1].k == 6));
  CHECK(enumerate_partners(Group::G2, 13).empty());
  auto e59 = enumerate_partners(Group::E8, 59);
  REQUIRE(e59.size() == 1);
  CHECK((e59[0].i == 30 && e59[0].j == 30 && e59[0].k == 2));
  CHECK(partner_degree(Group::E8, 31, 20, 12) == 2);
  CHECK_FALSE(partner_degree(Group::E8, 31, 2, 2));
  CHECK_THROWS_AS(require_regular(Group::E8, 29), NotRegularError);
}

TEST_CASE("P1 rows", "[samelson]") {
  CHECK(p1_table(Group::G2, 7, 4, "0") == parse_polynomial(group_model(Group::G2, 7).final_ring(), "x4*x12 + 2*x4^4"));
  const GroupModel& e8 = group_model(Group::E8, 31);
  CHECK(p1_table(Group::E8, 31, 16, "I1") ==
        normal_form(parse_polynomial(e8.model_ring(), "9*p7^2*p5 + 24*p7*p5^2*p2 + 22*p5^3*p4"),
                    parse_ideal(e8, "I1")));
  const GroupModel& e6 = group_model(Group::E6, 13);
  IdealSpec j = parse_ideal(e6, "(p1, p3^2, c5^2)");
  CHECK(p1_table(Group::E6, 13, 10, "(p1, p3^2, c5^2)") ==
        normal_form(parse_polynomial(e6.model_ring(), "6*c5*p4*p2 + 11*c5*p2^3"), j));
}

TEST_CASE("refusals", "[samelson]") {
  CHECK_THROWS_AS(p1_table(Group::E8, 31, 60, "I8"), RefusalError);
  // x24 is known only modulo (p1^2); an ideal without p1^2 cannot see it.
  CHECK_THROWS_AS(p1_table(Group::E8, 31, 24, "0"), RefusalError);
  CHECK_THROWS_AS(p1_table(Group::E8, 29, 4, "0"), NotRegularError);
}

TEST_CASE("two-unknown systems by Cramer's rule", "[samelson][oracle]") {
  // E6 at 13: -5 l1 + 12 l2 = 6, 7 l1 + l2 = 11.
  {
    const Residue p = 13;
    auto m = [&](std::int64_t v) { return fp_reduce(v, p); };
    Residue det = m(-5 * 1 - 12 * 7);
    Residue l1 = fp_div(m(6 * 1 - 12 * 11), det, p);
    Residue l2 = fp_div(m(-5 * 11 - 7 * 6), det, p);
    const CaseResult& r = cached_case(spec_of("E6-2", p));
    CHECK(r.find({10, 24})->value == l1);
    CHECK(r.find({16, 18})->value == l2);
    CHECK(l1 == 2);
    CHECK(l2 == 10);
    CHECK(residual(r).is_zero());
  }
  // E7 at 19: [[13, 9], [9, 14]] (l1, l2) = (11, 14).
  {
    const Residue p = 19;
    Residue det = fp_reduce(13 * 14 - 9 * 9, p);
    Residue l1 = fp_div(fp_reduce(11 * 14 - 9 * 14, p), det, p);
    Residue l2 = fp_div(fp_reduce(13 * 14 - 9 * 11, p), det, p);
    const CaseResult& r = cached_case(spec_of("E7-3", p));
    CHECK(r.find({16, 36})->value == l1);
    CHECK(r.find({24, 28})->value == l2);
    CHECK(residual(r).is_zero());
  }
}

TEST_CASE("single-unknown cases satisfy their congruence", "[samelson][oracle]") {
  for (const char* id : {"E6-4", "E6-5", "E6-6"}) {
    const CaseResult& r = cached_case(spec_of(id, 13));
    INFO(id);
    CHECK(residual(r).is_zero());
  }
  for (const char* id : {"E7-5", "E7-6", "E7-7"}) {
    const CaseResult& r = cached_case(spec_of(id, 19));
    INFO(id);
    CHECK(residual(r).is_zero());
  }
}

TEST_CASE("x60 follow-up", "[samelson][oracle]") {
  const CaseResult* r = nullptr;
  for (const auto& cs : case_specs(Group::E8, 31))
    if (cs.followup_p2) r = &cached_case(cs);
  REQUIRE(r);
  REQUIRE(r->followup);
  const FollowupResult& f = *r->followup;
  const GroupModel& gm = group_model(Group::E8, 31);
  IdealSpec j = parse_ideal(gm, f.ideal);
  REQUIRE(f.x60_computed);
  Polynomial x48 = gm.image(48);
  const SteenrodContext& st = gm.steenrod();
  CHECK(normal_form(st.p1(x48) - x48 * *f.x60_computed, j).is_zero());

  Polynomial lhs = normal_form(st.p1(st.p1(x48)), j);
  Polynomial base = normal_form(x48 * f.x60_computed->pow(2), j);
  REQUIRE_FALSE(base.is_zero());
  Residue ratio = fp_div(lhs.coefficient(base.leading().mono), base.leading().coeff, 31);
  CHECK(lhs == base.scaled(ratio));
  REQUIRE(f.lambda_plus_one);
  CHECK(*f.lambda_plus_one == ratio);
  CHECK(ratio != 1);
}

TEST_CASE("reports", "[samelson]") {
  const auto& g7 = report(Group::G2, 7);
  CHECK(g7.nontrivial_count() == 2);
  CHECK(g7.pair(2, 6).verdict == Verdict::NontrivialVerified);
  CHECK(g7.pair(6, 2).verdict == Verdict::NontrivialVerified);
  CHECK(g7.pair(2, 2).verdict == Verdict::TrivialByDegree);
  CHECK(report(Group::G2, 13).nontrivial_count() == 0);

  const auto& e59 = report(Group::E8, 59);
  CHECK(e59.nontrivial_count() == 1);
  CHECK(is_nontrivial(e59.pair(30, 30).verdict));
  CHECK(e59.pair(30, 30).supporting.size() >= 2);

  const auto& f13 = report(Group::F4, 13);
  CHECK(f13.nontrivial_count() == 5);
  CHECK(f13.pair(6, 12).verdict == Verdict::NontrivialDerived);
}

TEST_CASE("nontrivial exactly when a partner degree exists", "[samelson]") {
  for (Group g : kAllGroups)
    for (Residue p : partner_primes(g)) {
      const auto& rep = report(g, p);
      for (const auto& pv : rep.pairs) {
        INFO(group_name(g) << "@" << p << " (" << pv.i << ", " << pv.j << ")");
        CHECK(is_nontrivial(pv.verdict) == pv.k.has_value());
        CHECK_FALSE(pv.provenance.empty());
      }
    }
}

TEST_CASE("partner primes", "[samelson]") {
  CHECK(partner_primes(Group::G2) == std::vector<Residue>{7, 11});
  auto e8 = partner_primes(Group::E8);
  CHECK(e8.front() == 31);
  CHECK(e8.back() == 59);
}

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

#include "samelson/ideal_expr.hpp"
#include "samelson/invariants.hpp"
#include "samelson/verify.hpp"

using namespace samelson;

namespace {

RingPtr spin16(Residue p) { return PontryaginRing(ModelKind::D, 8, p).ring(); }

Polynomial P(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

}  // namespace

TEST_CASE("groebner of monomial ideals", "[quotient]") {
  auto r = spin16(31);
  auto g1 = groebner({P(r, "p1")});
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == P(r, "p1"));
  auto g2 = groebner({P(r, "p1"), P(r, "p2^2")});
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == P(r, "p1"));
  CHECK(g2[1] == P(r, "p2^2"));
}

TEST_CASE("normal forms", "[quotient]") {
  auto r = spin16(31);
  IdealSpec i("(p1)", r, {P(r, "p1")});
  CHECK(normal_form(P(r, "p1^2 + p2"), i) == P(r, "p2"));
  CHECK_THROWS_AS(normal_form(P(spin16(37), "p2"), i), StructuralError);
}

TEST_CASE("I8 contains xhat24 and reduces it through a binomial", "[quotient]") {
  const GroupModel& gm = group_model(Group::E8, 31);
  IdealSpec i8 = parse_ideal(gm, "I8");
  CHECK(normal_form(*gm.entry(24).xhat, i8).is_zero());
  // Modulo the monomial part, xhat24 is a nonzero multiple of 60p6 + 3p3^2.
  IdealSpec mono = parse_ideal(gm, "I0 + (p2, p4, p7^4)");
  Polynomial rest = normal_form(*gm.entry(24).xhat, mono);
  Polynomial bin = P(gm.model_ring(), "60*p6 + 3*p3^2");
  Residue c = fp_div(rest.leading().coeff, bin.leading().coeff, 31);
  CHECK(rest == bin.scaled(c));
  // The basis therefore has a leading term in p6 or p3^2 beyond the monomial part.
  bool found = false;
  for (const auto& g : i8.basis())
    if (g.size() == 2) found = true;
  CHECK(found);
}

TEST_CASE("ideal expressions", "[quotient]") {
  const GroupModel& gm = group_model(Group::E8, 31);
  IdealSpec a = parse_ideal(gm, "I3 + p3 + p4 + p7^2 + xhat40");
  CHECK(ideal_contains(a, P(gm.model_ring(), "p3")));
  CHECK(ideal_contains(a, *gm.entry(40).xhat));
  IdealSpec b = parse_ideal(gm, "I6 + xhat40^2");
  CHECK(ideal_contains(b, gm.entry(40).xhat->pow(2)));
  CHECK_FALSE(ideal_contains(b, *gm.entry(40).xhat));

  CHECK_THROWS_AS(parse_ideal(gm, "I9"), ParseError);
  CHECK_THROWS_AS(parse_ideal(gm, "(p1, p2"), ParseError);
  CHECK_THROWS_AS(parse_ideal(gm, "p1 + p2*"), ParseError);
  CHECK_THROWS_AS(parse_ideal(gm, "p1 + (p2 + p1)"), ParseError);  // inhomogeneous generator
  const GroupModel& e7 = group_model(Group::E7, 19);
  CHECK_THROWS_AS(parse_ideal(e7, "I1"), ParseError);
}

TEST_CASE("normal_form is idempotent and linear on random samples", "[quotient][oracle]") {
  for (Residue p : {31u, 59u}) {
    SuiteResult s = verify_normal_form(p);
    INFO(s.name << " p=" << p);
    for (const auto& c : s.checks) {
      INFO(c.label << " " << c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("subring intersection against Chern ideals", "[quotient]") {
  const Residue p = 31;
  PontryaginRing model(ModelKind::D, 8, p);
  RingPtr chern = make_chern_ring(8, p);
  RingMap to_c = pontryagin_to_chern(model, chern);
  IdealSpec big = chern_ideal(chern, "c1^2, c2^2");
  // p1^2 = (c1^2 - 2c2)^2 lies in (c1^2, c2^2); p1 does not.
  CHECK(ideal_contains(big, to_c(P(model.ring(), "p1^2"))));
  CHECK_FALSE(ideal_contains(big, to_c(P(model.ring(), "p1"))));
  IdealSpec small("(p1^2)", model.ring(), {P(model.ring(), "p1^2")});
  auto rep = subring_intersection_check(big, small, to_c, 8);
  REQUIRE_FALSE(rep.degrees.empty());
  CHECK(rep.degrees.front().degree == 0);
  CHECK(rep.degrees.front().equal);
  for (const auto& d : rep.degrees)
    if (d.degree == 4) CHECK(d.big_side_dim == 0);
}

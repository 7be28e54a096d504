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
#include "samelson/models.hpp"
#include "samelson/verify.hpp"

using namespace samelson;

TEST_CASE("P1 in the t-world", "[steenrod]") {
  TWorld w = TWorld::make(2, 7);
  CHECK(p1_t(w, parse_polynomial(w.ring, "t1")) == parse_polynomial(w.ring, "t1^7"));
  CHECK(p1_t(w, Polynomial::constant(w.ring, 1)).is_zero());
  CHECK(p1_t(w, parse_polynomial(w.ring, "t1*t2")) == parse_polynomial(w.ring, "t1^7*t2 + t1*t2^7"));
}

TEST_CASE("P1 on generators", "[steenrod]") {
  SteenrodContext st16{PontryaginRing(ModelKind::D, 8, 31)};
  Polynomial c8 = Polynomial::variable(st16.ring(), "c8");
  CHECK(st16.p1_generator("c8") == c8 * st16.power_sum(st16.q()));

  // Rank one, type B, p = 7: P1(t^2) = 2t^8 = 2p1^4.
  SteenrodContext st1{PontryaginRing(ModelKind::B, 1, 7)};
  CHECK(st1.p1_generator("p1") == parse_polynomial(st1.ring(), "2*p1^4"));

  // Rank two, type D, p = 7: agreement with decompose_invariant of the t-derivation.
  PontryaginRing d2(ModelKind::D, 2, 7);
  SteenrodContext st2{d2};
  TWorld w = TWorld::make(2, 7);
  RingMap to_t = d2.to_t_world(w);
  for (const char* g : {"p1", "c2"}) {
    Polynomial x = Polynomial::variable(d2.ring(), g);
    CHECK(st2.p1_generator(g) == decompose_invariant(w, p1_t(w, to_t(x)), d2));
  }
}

TEST_CASE("P1 on generators against the t-world, derivation law and naturality", "[steenrod][oracle]") {
  for (Residue p : {7u, 11u}) {
    SuiteResult s = verify_steenrod(p, 3, 100);
    for (const auto& c : s.checks) {
      INFO("p=" << p << " " << c.label << " " << c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("P2", "[steenrod]") {
  SteenrodContext st{PontryaginRing(ModelKind::D, 8, 31)};
  Polynomial p1 = Polynomial::variable(st.ring(), "p1");
  CHECK(st.p2(p1) == p1.pow(31));
  CHECK(st.p2(Polynomial::constant(st.ring(), 1)).is_zero());
  CHECK_THROWS_AS(st.p1(parse_polynomial(st.ring(), "p1 + p2")), PreconditionError);
}

TEST_CASE("P1 in the G2 model", "[steenrod]") {
  const GroupModel& gm = group_model(Group::G2, 7);
  auto r = gm.final_ring();
  CHECK(gm.restriction()(gm.steenrod().p1(*gm.entry(4).xhat)) == parse_polynomial(r, "x4*x12 + 2*x4^4"));
  CHECK(gm.restriction()(gm.steenrod().p1(*gm.entry(12).xhat)) == parse_polynomial(r, "6*x12^2 + 2*x4^3*x12"));
}

TEST_CASE("P2 of x48 modulo I8", "[steenrod]") {
  const GroupModel& gm = group_model(Group::E8, 31);
  IdealSpec i8 = parse_ideal(gm, "I8");
  Polynomial got = normal_form(gm.steenrod().p2(*gm.entry(48).xhat), i8);
  Polynomial want = normal_form(
      parse_polynomial(gm.model_ring(), "26*p7^3*p5^3*p3^2 + 5*p7^2*p5^5*p3 + 8*p7*p5^7"), i8);
  CHECK(got == want);
}

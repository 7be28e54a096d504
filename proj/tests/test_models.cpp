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

#include "samelson/models.hpp"

using namespace samelson;

TEST_CASE("group types", "[models]") {
  CHECK(group_types(Group::G2) == std::vector<int>{2, 6});
  CHECK(group_types(Group::F4) == std::vector<int>{2, 6, 8, 12});
  CHECK(group_types(Group::E8) == std::vector<int>{2, 8, 12, 14, 18, 20, 24, 30});
  CHECK(parse_group("E7") == Group::E7);
  CHECK_THROWS_AS(parse_group("E9"), UnknownGroupError);
}

TEST_CASE("p-regularity", "[models]") {
  CHECK(is_p_regular(Group::G2, 7));
  CHECK_FALSE(is_p_regular(Group::E8, 29));
  CHECK(is_p_regular(Group::E8, 31));
  CHECK(is_p_regular(Group::E6, 13));
  CHECK_FALSE(is_p_regular(Group::E7, 17));
}

TEST_CASE("catalog representatives", "[models]") {
  auto x4 = xhat(Group::E8, 4, 31);
  REQUIRE(x4.polynomial);
  CHECK(to_string(*x4.polynomial) == "p1");
  CHECK(x4.annotation == Annotation::Exact);

  auto x18 = xhat(Group::E6, 18, 13);
  REQUIRE(x18.polynomial);
  CHECK(*x18.polynomial == parse_polynomial(x18.polynomial->ring(), "p2*c5"));
  CHECK(x18.annotation == Annotation::Exact);

  auto x20 = xhat(Group::E7, 20, 19);
  REQUIRE(x20.polynomial);
  CHECK(*x20.polynomial == parse_polynomial(x20.polynomial->ring(), "p5 + p2*c6"));
  CHECK(x20.annotation == Annotation::ModP1Squared);

  auto x60 = xhat(Group::E8, 60, 31);
  CHECK_FALSE(x60.polynomial);
  CHECK(x60.annotation == Annotation::Unknown);
  CHECK_FALSE(x60.partial.empty());
}

TEST_CASE("every catalog entry has its degree", "[models]") {
  for (Group g : kAllGroups) {
    Residue p = g == Group::G2 ? 7 : g == Group::E8 ? 31 : g == Group::E7 ? 19 : 13;
    const GroupModel& gm = group_model(g, p);
    for (int k : gm.generator_degrees()) {
      const auto& e = gm.entry(k);
      if (!e.xhat) continue;
      INFO(group_name(g) << " x" << k);
      CHECK(e.xhat->coh_degree().degree == k);
      CHECK(gm.image(k).coh_degree().degree == k);
    }
  }
}

TEST_CASE("pullbacks", "[models]") {
  RingMap theta3 = pullback(Pullback::Theta3, 31);
  CHECK(theta3(Polynomial::variable(theta3.source(), "c5")).is_zero());
  RingMap theta1 = pullback(Pullback::Theta1, 31);
  CHECK(theta1(Polynomial::variable(theta1.source(), "p3")) == Polynomial::variable(theta1.target(), "p3"));
  RingMap rho = pullback(Pullback::RhoG2, 7);
  CHECK(rho(Polynomial::variable(rho.source(), "p1")) == Polynomial::variable(rho.target(), "x4"));
  CHECK(rho(Polynomial::variable(rho.source(), "p2")).is_zero());
  CHECK(rho(Polynomial::variable(rho.source(), "p3")) == Polynomial::variable(rho.target(), "x12"));
}

TEST_CASE("unknown generators refuse an image", "[models]") {
  const GroupModel& gm = group_model(Group::E8, 31);
  CHECK_THROWS_AS(gm.image(60), RefusalError);
  CHECK_THROWS_AS(gm.entry(6), PreconditionError);
}

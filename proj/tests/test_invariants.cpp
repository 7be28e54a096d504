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

#include "samelson/invariants.hpp"
#include "samelson/verify.hpp"

using namespace samelson;

namespace {

// Number of solutions of sum w_i e_i = d, by a coin-change table.
std::size_t count_weighted(const std::vector<int>& weights, int d) {
  std::vector<std::size_t> ways(static_cast<std::size_t>(d) + 1, 0);
  ways[0] = 1;
  for (int w : weights)
    for (int s = w; s <= d; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - w)];
  return ways[static_cast<std::size_t>(d)];
}

}  // namespace

TEST_CASE("weighted monomials", "[invariants]") {
  PontryaginRing d8(ModelKind::D, 8, 31);
  std::vector<int> w = {4, 8, 12, 16, 20, 24, 28, 16};
  for (int d : {0, 4, 8, 16, 36, 48}) CHECK(weighted_monomials(d8.ring(), d).size() == count_weighted(w, d));
  CHECK(weighted_monomials(d8.ring(), 6).empty());
  for (Monomial m : weighted_monomials(d8.ring(), 28))
    CHECK(Polynomial::monomial(d8.ring(), m).coh_degree().degree == 28);
}

TEST_CASE("invariant spaces", "[invariants]") {
  E8PhiSetup s(31);
  IdealSpec c1sq = chern_ideal(s.chern, "c1^2");
  IdealSpec zero("0", s.model.ring(), {});
  auto v4 = invariant_space(4, c1sq, zero);
  REQUIRE(v4.dimension() == 1);
  CHECK(v4.basis[0] == Polynomial::variable(s.model.ring(), "p1"));
  CHECK(invariant_space(8, c1sq, zero).dimension() == 1);
  CHECK(invariant_space(16, c1sq, zero).dimension() == 2);
  CHECK(in_span(invariant_space(16, c1sq, zero), Polynomial::variable(s.model.ring(), "p1", 4)));
  CHECK_FALSE(in_span(v4, Polynomial::variable(s.model.ring(), "p2")));
}

TEST_CASE("catalogued E8 generators are reflection invariant", "[invariants][oracle]") {
  SuiteResult s = verify_invariants(31);
  for (const auto& c : s.checks) {
    INFO(c.label << " " << c.detail);
    CHECK(c.pass);
  }
  CHECK_THROWS_AS(verify_invariants(29), NotRegularError);
  CHECK_THROWS_AS(verify_catalog_invariance(Group::E7, 12, 19), PreconditionError);
}

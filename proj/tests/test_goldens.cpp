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

#include "samelson/goldens.hpp"

using namespace samelson;

TEST_CASE("LaTeX transcription to expression text", "[goldens]") {
  CHECK(latex_to_expr("9p_7^2p_{5}+x_{12}") == "9*p7^2*p5+x12");
  CHECK(latex_to_expr("$ 28 p_7 p_6 $") == "28*p7*p6");
  CHECK(latex_to_expr("I_8") == "I8");
  CHECK(latex_to_expr("(p_1,p_3^2,c_6)") == "(p1,p3^2,c6)");
  CHECK(latex_to_expr("\\hat{x}_{40}^2") == "hatx40^2");
}

TEST_CASE("golden file parsing", "[goldens]") {
  GoldenSet set;
  parse_table_golden("# comment\n\nE8 | 31 | 16 | P1 | I_1 | 9p_7^2p_5\n", "t.txt", set);
  REQUIRE(set.rows.size() == 1);
  CHECK(set.rows[0].key() == "table E8 31 16 P1");
  CHECK(set.rows[0].line == 3);
  CHECK_THROWS_AS(parse_table_golden("E8 | 31 | 16 | P3 | I_1 | 1\n", "t.txt", set), ParseError);
  CHECK_THROWS_AS(parse_table_golden("E8 | 31 | 16 | P1\n", "t.txt", set), ParseError);

  parse_lambda_golden("lambda | E8-2 | 31 | 16 | x28*x48 | 10\n", "l.txt", set);
  REQUIRE(set.lambdas.size() == 1);
  CHECK(set.lambdas[0].key() == "lambda E8-2 31 16 x28*x48");

  parse_errata("table E7 31 12 P1 | typo | a -> b | note\nlambda E8-2 31 16 x28*x48 | conflict | 19 | n\n",
                       "e.txt", set);
  REQUIRE(set.errata.size() == 2);
  const Erratum& t = set.errata.at("table E7 31 12 P1");
  CHECK(t.kind == "typo");
  CHECK(t.from == "a");
  CHECK(t.to == "b");
  CHECK(set.errata.at("lambda E8-2 31 16 x28*x48").computed == "19");
  CHECK_THROWS_AS(parse_errata("k | retract | x | y\n", "e.txt", set), ParseError);
}

TEST_CASE("table rows against the computation", "[goldens]") {
  GoldenTableRow r;
  r.group = Group::G2;
  r.prime = 7;
  r.k = 4;
  r.ideal = "0";
  r.polynomial = "x_4x_{12}+2x_4^4";
  CHECK(check_table_row(r, nullptr).status == GoldenStatus::Match);
  r.polynomial = "x_4x_{12}+3x_4^4";
  CHECK(check_table_row(r, nullptr).status == GoldenStatus::Mismatch);

  std::map<std::string, Erratum> errata;
  errata[r.key()] = Erratum{r.key(), "typo", "3x_4^4", "2x_4^4", "", ""};
  auto o = check_table_row(r, &errata);
  CHECK(o.status == GoldenStatus::Erratum);
  CHECK_FALSE(o.verbatim_match);

  // A pinned conflict passes only while the computation still equals the pin.
  errata[r.key()] = Erratum{r.key(), "conflict", "", "", "x4*x12 + 2*x4^4", ""};
  CHECK(check_table_row(r, &errata).status == GoldenStatus::Conflict);
  errata[r.key()].computed = "x4*x12";
  CHECK(check_table_row(r, &errata).status == GoldenStatus::Mismatch);
}

TEST_CASE("the shipped golden files", "[goldens]") {
  GoldenSet set = load_goldens(SAMELSON_GOLDENS_DIR);
  CHECK(set.rows.size() > 20);
  GoldensReport with = check_goldens(set, true);
  for (const auto& o : with.outcomes) {
    INFO(o.key << " " << o.where << " " << o.detail);
    CHECK((o.status == GoldenStatus::Match || o.status == GoldenStatus::Erratum ||
           o.status == GoldenStatus::Conflict));
  }
  CHECK(with.unused_errata.empty());
  CHECK(with.ok());
  GoldensReport verbatim = check_goldens(set, false);
  CHECK_FALSE(verbatim.ok());
  CHECK(verbatim.count(GoldenStatus::Mismatch) == set.errata.size());
}

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

#include <sstream>

#include "samelson/cli.hpp"

using namespace samelson;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"tables", "--group", "E8"}).code == cli::kUsage);
  CHECK(run({"samelson", "--group", "E8", "--prime", "31", "--format", "yaml"}).code == cli::kUsage);
  CHECK(run({"samelson", "--group", "E9", "--prime", "31"}).code == cli::kUnknownGroup);
  CHECK(run({"samelson", "--group", "E8", "--prime", "33"}).code == cli::kBadPrime);
  CHECK(run({"samelson", "--group", "E8", "--prime", "5"}).code == cli::kBadPrime);
  CHECK(run({"tables", "--group", "E8", "--prime", "29"}).code == cli::kNotRegular);
  CHECK(run({"tables", "--group", "E8", "--prime", "31", "--ideal", "(p1,"}).code == cli::kParse);
  CHECK(run({"tables", "--group", "E8", "--prime", "31", "--ideal", "0", "--k", "24"}).code == cli::kRefused);
  CHECK(run({"verify", "phi", "--p", "31"}).code == cli::kOk);
  CHECK(run({"goldens", "check", "/nonexistent"}).code == cli::kUsage);
  Run r = run({"samelson", "--group", "E9", "--prime", "31"});
  CHECK(r.out.empty());
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("output is deterministic", "[cli]") {
  std::vector<std::string> args = {"samelson", "--group", "E7", "--prime", "19", "--cases"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Run c = run({"tables", "--group", "E6", "--prime", "13", "--format", "json"});
  Run d = run({"tables", "--group", "E6", "--prime", "13", "--format", "json"});
  CHECK(c.out == d.out);
}

TEST_CASE("polynomials round-trip through JSON", "[cli]") {
  const GroupModel& gm = group_model(Group::E8, 31);
  for (int k : {4, 16, 24, 28, 36, 40, 48}) {
    Polynomial f = *gm.entry(k).xhat;
    Json j = Json::parse(Json{{"f", polynomial_to_json(f)}}.dump());
    CHECK(polynomial_from_json(gm.model_ring(), j["f"]) == f);
  }
  CHECK_THROWS_AS(polynomial_from_json(gm.model_ring(), Json(3)), ParseError);
}

TEST_CASE("tables command", "[cli]") {
  Run r = run({"tables", "--group", "E8", "--prime", "31", "--format", "json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["group"] == "E8");
  const Json* k4 = nullptr;
  for (const auto& e : j["entries"])
    if (e["k"] == 4) k4 = &e;
  REQUIRE(k4);
  REQUIRE((*k4)["cases"].size() >= 1);
  CHECK((*k4)["cases"][0]["candidates"].size() == 4);
  for (const auto& e : j["entries"])
    for (const auto& t : e["tables"]) CHECK((t.contains("polynomial") != t.contains("refusal")));

  Run g2 = run({"tables", "--group", "G2", "--prime", "7", "--ideal", "0"});
  CHECK(g2.code == 0);
  CHECK(g2.out.find("2*x4^4 + x12*x4") != std::string::npos);
}

TEST_CASE("samelson command", "[cli]") {
  Run r = run({"samelson", "--group", "G2", "--prime", "13"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["nontrivial"] == 0);
  CHECK(j["pairs"].size() == 3);
  Run e = run({"samelson", "--group", "E8", "--prime", "59"});
  Json je = Json::parse(e.out);
  CHECK(je["nontrivial"] == 1);
  for (const auto& pv : je["pairs"])
    if (pv["i"] == 30 && pv["j"] == 30) {
      CHECK(pv["partner_k"] == 2);
      CHECK(pv["verdict"].get<std::string>().rfind("nontrivial", 0) == 0);
    }
}

TEST_CASE("goldens command", "[cli]") {
  CHECK(run({"goldens", "check", SAMELSON_GOLDENS_DIR}).code == cli::kOk);
  Run v = run({"goldens", "check", SAMELSON_GOLDENS_DIR, "--verbatim", "--format", "json"});
  CHECK(v.code == cli::kCheckFailed);
  CHECK(Json::parse(v.out)["ok"] == false);
}

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

#include <random>

#include "samelson/symfun.hpp"
#include "samelson/verify.hpp"

using namespace samelson;

namespace {

Polynomial T(const TWorld& w, const char* s) { return parse_polynomial(w.ring, s); }

// e_i(y_1..y_m) by expanding prod (1 + y_j z) term by term, independent of
// elem_sym_t's recurrence.
Polynomial slow_elementary(const TWorld& w, int i, unsigned power) {
  Polynomial s(w.ring);
  for (unsigned mask = 0; mask < (1u << w.m); ++mask) {
    if (__builtin_popcount(mask) != i) continue;
    Polynomial term = Polynomial::constant(w.ring, 1);
    for (int j = 0; j < w.m; ++j)
      if (mask & (1u << j)) term = term * Polynomial::variable(w.ring, static_cast<std::size_t>(j), power);
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("elementary symmetric functions", "[symfun]") {
  TWorld w2 = TWorld::make(2, 31);
  CHECK(elem_sym_t(w2, SymKind::Chern, 1) == T(w2, "t1 + t2"));
  CHECK(elem_sym_t(w2, SymKind::Pontryagin, 2) == T(w2, "t1^2*t2^2"));
  TWorld w3 = TWorld::make(3, 31);
  CHECK(elem_sym_t(w3, SymKind::Pontryagin, 1) == T(w3, "t1^2 + t2^2 + t3^2"));
  for (int m = 1; m <= 5; ++m) {
    TWorld w = TWorld::make(m, 37);
    for (int i = 0; i <= m; ++i) {
      CHECK(elem_sym_t(w, SymKind::Chern, i) == slow_elementary(w, i, 1));
      CHECK(elem_sym_t(w, SymKind::Pontryagin, i) == slow_elementary(w, i, 2));
    }
  }
}

TEST_CASE("Girard's formula in low degree", "[symfun]") {
  PontryaginRing r(ModelKind::B, 4, 31);
  CHECK(girard_power_sum(1, r) == parse_polynomial(r.ring(), "p1"));
  CHECK(girard_power_sum(2, r) == parse_polynomial(r.ring(), "p1^2 - 2*p2"));
  CHECK(girard_power_sum(3, r) == parse_polynomial(r.ring(), "p1^3 - 3*p1*p2 + 3*p3"));
  CHECK_THROWS_AS(girard_power_sum(0, r), PreconditionError);
}

TEST_CASE("Girard's formula against the t-expansion", "[symfun][oracle]") {
  for (Residue p : {7u, 11u, 31u})
    for (int m = 1; m <= 4; ++m) {
      SuiteResult s = verify_girard(m, p, 6);
      for (const auto& c : s.checks) {
        INFO("p=" << p << " " << c.label << " " << c.detail);
        CHECK(c.pass);
      }
    }
}

TEST_CASE("Pontryagin classes in Chern classes", "[symfun]") {
  RingPtr c = make_chern_ring(8, 31);
  CHECK(pontryagin_in_chern(1, c) == parse_polynomial(c, "c1^2 - 2*c2"));
  CHECK(pontryagin_in_chern(2, c) == parse_polynomial(c, "c2^2 - 2*c1*c3 + 2*c4"));
  CHECK(pontryagin_in_chern(8, c) == parse_polynomial(c, "c8^2"));
  // Oracle: e_i(t^2) against the substituted Chern expression in the t-world.
  for (int m : {3, 4}) {
    TWorld w = TWorld::make(m, 31);
    RingPtr cm = make_chern_ring(m, 31);
    std::vector<Polynomial> imgs;
    for (int j = 1; j <= m; ++j) imgs.push_back(elem_sym_t(w, SymKind::Chern, j));
    RingMap c_to_t("c->t", cm, w.ring, imgs);
    for (int i = 1; i <= m; ++i) CHECK(c_to_t(pontryagin_in_chern(i, cm)) == elem_sym_t(w, SymKind::Pontryagin, i));
  }
}

TEST_CASE("decomposing invariants", "[symfun]") {
  TWorld w3 = TWorld::make(3, 31);
  PontryaginRing d3(ModelKind::D, 3, 31);
  CHECK(decompose_invariant(w3, elem_sym_t(w3, SymKind::Pontryagin, 2), d3) == parse_polynomial(d3.ring(), "p2"));
  CHECK(decompose_invariant(w3, elem_sym_t(w3, SymKind::Chern, 3) * elem_sym_t(w3, SymKind::Pontryagin, 1), d3) ==
        parse_polynomial(d3.ring(), "c3*p1"));
  TWorld w2 = TWorld::make(2, 31);
  PontryaginRing d2(ModelKind::D, 2, 31);
  CHECK(decompose_invariant(w2, T(w2, "(t1^2 + t2^2)^2"), d2) == parse_polynomial(d2.ring(), "p1^2"));
  CHECK_THROWS_AS(decompose_invariant(w2, T(w2, "t1"), d2), NotInvariantError);
}

TEST_CASE("the reflection phi", "[symfun]") {
  TWorld w = TWorld::make(8, 31);
  std::mt19937_64 rng(kSampleSeed);
  for (int s = 0; s < 20; ++s) {
    Polynomial f = random_homogeneous(w.ring, 2 * (1 + static_cast<int>(rng() % 4)), rng, 4);
    CHECK(phi_reflect_exact(w, phi_reflect_exact(w, f)) == f);
  }
  CHECK(phi_reflect_exact(w, elem_sym_t(w, SymKind::Pontryagin, 1)) == elem_sym_t(w, SymKind::Pontryagin, 1));

  const PhiData& phi = phi_data(31);
  RingPtr c = phi.chern();
  Polynomial p2 = pontryagin_in_chern(2, c);
  CHECK(mod_c1_squared(phi.phi_truncated(p2) - p2 - parse_polynomial(c, "3/2*c3*c1")).is_zero());
  CHECK(mod_c1_squared(phi.phi_truncated(Polynomial::variable(c, 7))) == parse_polynomial(c, "c8 - 1/4*c7*c1"));
  CHECK(phi.phi_truncated(Polynomial::constant(c, 1)) == Polynomial::constant(c, 1));
}

TEST_CASE("catalogued h_i against the exact reflection", "[symfun][oracle]") {
  for (Residue p : {31u, 37u}) {
    SuiteResult s = verify_phi(p);
    for (const auto& c : s.checks) {
      INFO("p=" << p << " " << c.label << " " << c.detail);
      CHECK(c.pass);
    }
  }
}

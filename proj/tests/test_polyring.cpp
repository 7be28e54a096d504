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

#include "samelson/groebner.hpp"
#include "samelson/linalg.hpp"
#include "samelson/models.hpp"
#include "samelson/ring_map.hpp"

using namespace samelson;

namespace {

RingPtr spin16(Residue p) { return PontryaginRing(ModelKind::D, 8, p).ring(); }

// Brute-force inverse by search.
Residue slow_inverse(Residue a, Residue p) {
  for (Residue x = 1; x < p; ++x)
    if ((static_cast<std::uint64_t>(a) * x) % p == 1) return x;
  return 0;
}

}  // namespace

TEST_CASE("fp_inv on small examples", "[polyring]") {
  CHECK(fp_inv(1, 31) == 1);
  CHECK(fp_inv(2, 7) == 4);
  CHECK(fp_inv(10, 31) == 28);
  CHECK_THROWS_AS(fp_inv(0, 31), DivisionByZeroError);
}

TEST_CASE("fp_inv agrees with exhaustive search", "[polyring]") {
  for (Residue p : {7u, 31u, 59u, 101u})
    for (Residue a = 1; a < p; ++a) CHECK(fp_inv(a, p) == slow_inverse(a, p));
}

TEST_CASE("rationals resolve modulo p", "[polyring]") {
  CHECK(parse_rational("-18/5").to_residue(31) == fp_div(fp_neg(18, 31), 5, 31));
  CHECK(parse_rational("1/10").to_residue(37) == fp_inv(10, 37));
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZeroError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("polynomial arithmetic", "[polyring]") {
  auto r = spin16(31);
  Polynomial p1 = Polynomial::variable(r, "p1");
  CHECK((p1 + -p1).is_zero());
  CHECK((p1 - p1).is_zero());

  auto r7 = spin16(7);
  Polynomial q = Polynomial::variable(r7, "p1").pow(2);
  REQUIRE(q.size() == 1);
  CHECK(q.leading().coeff == 1);
  CHECK(q.coh_degree().degree == 8);

  Polynomial f = parse_polynomial(r, "p1 + p2");
  Polynomial g = parse_polynomial(r, "p1 - p2");
  CHECK(f * g == parse_polynomial(r, "p1^2 - p2^2"));
  CHECK(f.scaled(3) == parse_polynomial(r, "3*p1 + 3*p2"));
  CHECK(f.pow(3) == f * f * f);
}

TEST_CASE("product in the Spin(10) model", "[polyring]") {
  auto r = PontryaginRing::spin(10, 13).ring();
  Polynomial x = Polynomial::variable(r, "c5") * Polynomial::variable(r, "p2");
  CHECK(to_string(x) == "c5*p2");
  CHECK(x.coh_degree().degree == 18);
}

TEST_CASE("coh_degree markers", "[polyring]") {
  auto r = spin16(31);
  Polynomial x16 = parse_polynomial(r, "12*p4 - 18/5*p3*p1 + p2^2 + 1/10*p2*p1^2 + 168*c8");
  CHECK(x16.coh_degree().is_homogeneous());
  CHECK(x16.coh_degree().degree == 16);
  CHECK(Polynomial(r).coh_degree().is_zero());
  CHECK(parse_polynomial(r, "p1 + p2").coh_degree().is_mixed());
}

TEST_CASE("canonical text round-trips", "[polyring]") {
  auto r = spin16(37);
  for (const char* s : {"9*p7^2*p5 + 24*p7*p5^2*p2 + 22*p5^3*p4", "c8 - 1/4*p1*p7", "5", "0",
                        "(p1 + p2)^3 - 2*p3*c8"}) {
    Polynomial f = parse_polynomial(r, s);
    CHECK(parse_polynomial(r, to_string(f)) == f);
  }
}

TEST_CASE("parser rejects malformed input", "[polyring]") {
  auto r = spin16(31);
  CHECK_THROWS_AS(parse_polynomial(r, "p1 +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(r, "q9"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(r, "p1^"), ParseError);
}

TEST_CASE("rings reject bad primes and foreign polynomials", "[polyring]") {
  CHECK_THROWS_AS(make_ring(4, {{"x", 2}}), StructuralError);
  CHECK_THROWS_AS(make_ring(31, {{"x", 3}}), StructuralError);
  auto a = spin16(31);
  auto b = spin16(37);
  CHECK_THROWS_AS(Polynomial::variable(a, "p1") + Polynomial::variable(b, "p1"), StructuralError);
}

TEST_CASE("ring maps", "[polyring]") {
  const Residue p = 31;
  RingMap theta1 = pullback(Pullback::Theta1, p);
  auto src = theta1.source();
  CHECK(theta1(parse_polynomial(src, "p7*p5")).is_zero());
  CHECK(theta1(parse_polynomial(src, "p6")) == parse_polynomial(theta1.target(), "c6^2"));

  RingMap id = RingMap::identity(src);
  Polynomial f = parse_polynomial(src, "p3*p2 + 7*c8*p1");
  CHECK(id(f) == f);

  RingMap theta2 = pullback(Pullback::Theta2, p);
  Polynomial x12 = parse_polynomial(theta2.source(), "-6*p3 + p2*p1 - 60*c6");
  CHECK(theta2(x12) == parse_polynomial(theta2.target(), "-6*p3 + p2*p1"));
}

TEST_CASE("solve_fp", "[polyring]") {
  SECTION("1x1") {
    auto s = solve_fp(LinearSystem(FpMatrix({{1}}, 7), {5}));
    REQUIRE(s.consistent);
    CHECK(s.particular[0] == 5);
    CHECK(s.nullspace.empty());
  }
  SECTION("2x2 over F_19, checked by Cramer's rule") {
    std::int64_t a = 13, b = 9, c = 9, d = 14, e = 11, f = 14;
    const Residue p = 19;
    auto s = solve_fp(LinearSystem(FpMatrix({{a, b}, {c, d}}, p), {static_cast<Residue>(e), static_cast<Residue>(f)}));
    REQUIRE(s.consistent);
    Residue det = fp_reduce(a * d - b * c, p);
    REQUIRE(det != 0);
    Residue x = fp_div(fp_reduce(e * d - b * f, p), det, p);
    Residue y = fp_div(fp_reduce(a * f - e * c, p), det, p);
    CHECK(s.particular[0] == x);
    CHECK(s.particular[1] == y);
    CHECK(x != 0);
    CHECK(y != 0);
  }
  SECTION("zero matrix with nonzero rhs") {
    auto s = solve_fp(LinearSystem(FpMatrix({{0, 0}}, 7), {3}));
    CHECK_FALSE(s.consistent);
  }
  SECTION("underdetermined system keeps a nullspace") {
    auto s = solve_fp(LinearSystem(FpMatrix({{1, 1}}, 7), {3}));
    REQUIRE(s.consistent);
    CHECK(s.nullspace.size() == 1);
    CHECK_FALSE(s.determined(0));
  }
}

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

#ifndef SAMELSON_VERIFY_HPP
#define SAMELSON_VERIFY_HPP

// Self-check suites.  Each compares production code against an independent
// computation: power sums and P^1 against the t-world, the catalogued phi
// data against the exact reflection, and the invariant-theory statements
// against a fresh nullspace computation.  Random samples use a fixed seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "samelson/invariants.hpp"
#include "samelson/steenrod.hpp"

namespace samelson {

struct Check {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  Residue prime = 0;
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::size_t passed() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
  }
  void add(std::string label, bool pass, std::string detail = {}) {
    checks.push_back({std::move(label), pass, std::move(detail)});
  }
};

inline constexpr std::uint64_t kSampleSeed = 0x5a3e150bULL;

/// Random homogeneous polynomial of the given degree (zero if the degree
/// has no monomials).
inline Polynomial random_homogeneous(const RingPtr& ring, int degree, std::mt19937_64& rng,
                                     std::size_t max_terms = 6) {
  auto monos = weighted_monomials(ring, degree);
  std::vector<Term> terms;
  if (monos.empty()) return Polynomial(ring);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<Residue> coeff(1, ring->prime() - 1);
  std::size_t n = std::min(max_terms, monos.size());
  for (std::size_t i = 0; i < n; ++i) terms.push_back({monos[pick(rng)], coeff(rng)});
  return Polynomial::from_terms(ring, std::move(terms));
}

namespace detail {

inline std::string model_label(ModelKind kind, int m) {
  return (kind == ModelKind::B ? "B" : "D") + std::to_string(m);
}

// Sum of t_i^e over the t-world.
inline Polynomial t_power_sum(const TWorld& w, unsigned e) {
  Polynomial s(w.ring);
  for (int i = 1; i <= w.m; ++i) s += Polynomial::variable(w.ring, static_cast<std::size_t>(i - 1), e);
  return s;
}

}  // namespace detail

/// Girard's formula for s_1..s_kmax against the t-expansion, in both model
/// types of rank m.
inline SuiteResult verify_girard(int m, Residue p, int kmax = 6) {
  if (m < 1 || m > 8) throw PreconditionError("verify girard: m must be in 1..8");
  if (!is_prime(p) || p <= 5) throw PreconditionError("verify girard: p must be a prime > 5");
  SuiteResult r{"girard", p, {}};
  TWorld w = TWorld::make(m, p);
  for (ModelKind kind : {ModelKind::B, ModelKind::D}) {
    if (kind == ModelKind::D && m < 2) continue;
    PontryaginRing ring(kind, m, p);
    RingMap to_t = ring.to_t_world(w);
    for (int k = 1; k <= kmax; ++k) {
      Polynomial lhs = to_t(girard_power_sum(k, ring));
      Polynomial rhs = detail::t_power_sum(w, static_cast<unsigned>(2 * k));
      r.add("s" + std::to_string(k) + " in " + detail::model_label(kind, m), lhs == rhs,
            lhs == rhs ? "" : "difference " + to_string(lhs - rhs));
    }
  }
  return r;
}

/// The P^1 formula on every generator of the rank <= max_rank models against the
/// derivation t -> t^p, then the derivation law, agreement with the t-world
/// and naturality of the Spin pullbacks on random samples.
inline SuiteResult verify_steenrod(Residue p, int max_rank = 3, int samples = 100) {
  if (!is_prime(p) || p <= 5) throw PreconditionError("verify steenrod: p must be a prime > 5");
  SuiteResult r{"steenrod", p, {}};
  std::mt19937_64 rng(kSampleSeed ^ p);

  for (int m = 1; m <= max_rank; ++m) {
    for (ModelKind kind : {ModelKind::B, ModelKind::D}) {
      if (kind == ModelKind::D && m < 2) continue;
      SteenrodContext st{PontryaginRing(kind, m, p)};
      TWorld w = TWorld::make(m, p);
      RingMap to_t = st.model().to_t_world(w);
      for (std::size_t v = 0; v < st.ring()->size(); ++v) {
        Polynomial x = Polynomial::variable(st.ring(), v);
        bool ok = to_t(st.p1_generator(v)) == p1_t(w, to_t(x));
        r.add("P1 " + st.ring()->var(v).name + " in " + detail::model_label(kind, m), ok);
      }
      int bad = 0;
      for (int s = 0; s < samples / (2 * max_rank); ++s) {
        int deg = 4 * (1 + static_cast<int>(rng() % 4));
        Polynomial f = random_homogeneous(st.ring(), deg, rng);
        if (!(to_t(st.p1(f)) == p1_t(w, to_t(f)))) ++bad;
      }
      r.add("P1 vs t-world on random samples in " + detail::model_label(kind, m), bad == 0,
            bad ? std::to_string(bad) + " disagreements" : "");
    }
  }

  // Derivation law in the Spin(16) model.
  {
    SteenrodContext st{PontryaginRing(ModelKind::D, 8, p)};
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
      Polynomial f = random_homogeneous(st.ring(), 4 * (1 + static_cast<int>(rng() % 5)), rng, 4);
      Polynomial g = random_homogeneous(st.ring(), 4 * (1 + static_cast<int>(rng() % 5)), rng, 4);
      if (!(st.p1(f * g) == st.p1(f) * g + f * st.p1(g))) ++bad;
    }
    r.add("derivation law P1(fg) = P1(f)g + fP1(g), " + std::to_string(samples) + " samples", bad == 0,
          bad ? std::to_string(bad) + " failures" : "");
  }

  // theta* commutes with P1.
  struct Hop {
    Pullback which;
    int from, to;
    const char* label;
  };
  for (const Hop& h : {Hop{Pullback::Theta1, 16, 12, "theta1"}, Hop{Pullback::Theta2, 12, 10, "theta2"},
                       Hop{Pullback::Theta3, 10, 9, "theta3"}}) {
    SteenrodContext src{PontryaginRing::spin(h.from, p)};
    SteenrodContext dst{PontryaginRing::spin(h.to, p)};
    RingMap theta = pullback(h.which, p);
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
      Polynomial f = random_homogeneous(src.ring(), 4 * (1 + static_cast<int>(rng() % 6)), rng, 5);
      if (!(theta(src.p1(f)) == dst.p1(theta(f)))) ++bad;
    }
    r.add(std::string("naturality of ") + h.label + ", " + std::to_string(samples) + " samples", bad == 0,
          bad ? std::to_string(bad) + " failures" : "");
  }
  return r;
}

/// normal_form is idempotent and linear, and kills the ideal's generators.
inline SuiteResult verify_normal_form(Residue p, int samples = 100) {
  if (!is_prime(p) || p <= 5) throw PreconditionError("verify normal form: p must be a prime > 5");
  SuiteResult r{"normal-form", p, {}};
  RingPtr ring = PontryaginRing(ModelKind::D, 8, p).ring();
  std::vector<Polynomial> gens;
  for (const char* s : {"p1^2 + p2", "p3^2 - 2*p2*p4", "p4^2 + p7*p1", "c8*p1 - p3*p2"})
    gens.push_back(parse_polynomial(ring, s));
  IdealSpec ideal("sample", ring, gens, 96);
  std::mt19937_64 rng(kSampleSeed + p);
  std::uniform_int_distribution<Residue> coeff(0, p - 1);
  int idem = 0, lin = 0, mem = 0;
  for (int s = 0; s < samples; ++s) {
    int deg = 4 * (2 + static_cast<int>(rng() % 8));
    Polynomial f = random_homogeneous(ring, deg, rng);
    Polynomial g = random_homogeneous(ring, deg, rng);
    Residue a = coeff(rng), b = coeff(rng);
    Polynomial nf = normal_form(f, ideal);
    if (!(normal_form(nf, ideal) == nf)) ++idem;
    if (!(normal_form(f.scaled(a) + g.scaled(b), ideal) == nf.scaled(a) + normal_form(g, ideal).scaled(b))) ++lin;
    const Polynomial& gen = gens[static_cast<std::size_t>(s) % gens.size()];
    Polynomial h = random_homogeneous(ring, 4 * (1 + static_cast<int>(rng() % 4)), rng, 3);
    if (!normal_form(gen * h, ideal).is_zero()) ++mem;
  }
  r.add("idempotence, " + std::to_string(samples) + " samples", idem == 0);
  r.add("linearity, " + std::to_string(samples) + " samples", lin == 0);
  r.add("ideal members reduce to zero, " + std::to_string(samples) + " samples", mem == 0);
  return r;
}

/// h_2..h_7 and phi(c_8) against the exact reflection, modulo (c_1^2).
inline SuiteResult verify_phi(Residue p) {
  if (!is_prime(p) || p <= 5) throw PreconditionError("verify phi: p must be a prime > 5");
  SuiteResult r{"phi", p, {}};
  const PhiData& phi = phi_data(p);
  const RingPtr& c = phi.chern();
  for (int i = 1; i <= 7; ++i) {
    Polynomial exact = mod_c1_squared(phi.phi_truncated(pontryagin_in_chern(i, c)));
    Polynomial cat = mod_c1_squared(phi.catalog_phi_p(i));
    r.add("phi(p" + std::to_string(i) + ") = p" + std::to_string(i) + (i == 1 ? "" : " + h" + std::to_string(i) + "*c1"),
          exact == cat, exact == cat ? "" : "difference " + to_string(exact - cat));
  }
  Polynomial c8 = Polynomial::variable(c, 7);
  Polynomial exact = mod_c1_squared(phi.phi_truncated(c8));
  r.add("phi(c8) = c8 - 1/4*c7*c1", exact == phi.catalog_phi_c8(),
        exact == phi.catalog_phi_c8() ? "" : "difference " + to_string(exact - phi.catalog_phi_c8()));
  // The reflection is an involution on the full Chern ring.
  std::vector<Polynomial> images;
  for (int i = 1; i <= 8; ++i) images.push_back(phi.phi_c(i));
  RingMap once("phi_c", c, c, images);
  bool inv = true;
  for (int j = 1; j <= 8; ++j)
    if (!(once(phi.phi_c(j)) == Polynomial::variable(c, static_cast<std::size_t>(j - 1)))) inv = false;
  r.add("reflection is an involution", inv);
  return r;
}

/// Expected dimension of the invariant space in each E8 generator degree.
inline const std::vector<std::pair<int, std::size_t>>& e8_invariant_dimensions() {
  static const std::vector<std::pair<int, std::size_t>> kDims = {
      {4, 1}, {16, 2}, {24, 1}, {28, 2}, {36, 6}, {40, 2}, {48, 3}};
  return kDims;
}

/// Dimension and membership of every catalogued E8 generator.
inline SuiteResult verify_invariants(Residue p) {
  if (!is_p_regular(Group::E8, p) || !is_prime(p))
    throw NotRegularError("verify invariants: E8 is not " + std::to_string(p) + "-regular");
  SuiteResult r{"invariants", p, {}};
  for (const auto& [k, dim] : e8_invariant_dimensions()) {
    InvarianceCheck c = verify_catalog_invariance(Group::E8, k, p);
    std::string detail = "dimension " + std::to_string(c.dimension) + ", expected " + std::to_string(dim);
    if (c.span_quotient != "0") detail += ", span compared modulo (" + c.span_quotient + ")";
    if (!c.note.empty()) detail += ", " + c.note;
    r.add("degree " + std::to_string(k), c.pass && c.dimension == dim, detail);
  }
  return r;
}

}  // namespace samelson

#endif  // SAMELSON_VERIFY_HPP

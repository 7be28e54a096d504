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

#ifndef SAMELSON_INVARIANTS_HPP
#define SAMELSON_INVARIANTS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "samelson/groebner.hpp"
#include "samelson/ideal_expr.hpp"
#include "samelson/linalg.hpp"
#include "samelson/models.hpp"

namespace samelson {

/// All monomials of the given cohomological degree, largest first.
inline std::vector<Monomial> weighted_monomials(const RingSpec& ring, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == ring.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int d = ring.var(i).degree;
    for (int e = 0; e * d <= left; ++e) {
      cur.set(i, static_cast<unsigned>(e));
      rec(i + 1, left - e * d);
    }
    cur.set(i, 0);
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [&](Monomial a, Monomial b) { return ring.compare(a, b) > 0; });
  return out;
}

inline std::vector<Monomial> weighted_monomials(const RingPtr& ring, int degree) {
  return weighted_monomials(*ring, degree);
}

namespace detail {

/// Coefficient matrix: one column per polynomial, one row per monomial that
/// occurs anywhere.
inline FpMatrix coefficient_matrix(const std::vector<Polynomial>& polys, Residue p) {
  std::map<std::uint64_t, std::size_t> row_of;
  for (const auto& f : polys)
    for (const auto& t : f.terms()) row_of.emplace(t.mono.bits(), 0);
  std::size_t r = 0;
  for (auto& [_, idx] : row_of) idx = r++;
  FpMatrix m(row_of.size(), polys.size(), p);
  for (std::size_t c = 0; c < polys.size(); ++c)
    for (const auto& t : polys[c].terms()) m.at(row_of[t.mono.bits()], c) = t.coeff;
  return m;
}

inline Polynomial combination(const RingPtr& ring, const std::vector<Monomial>& monos,
                              const std::vector<Residue>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (coeffs[i]) terms.push_back({monos[i], coeffs[i]});
  return Polynomial::from_terms(ring, std::move(terms));
}

/// Row-echelon basis of the span of polys (zero polynomials dropped).
inline std::vector<Polynomial> echelon_basis(const std::vector<Polynomial>& polys,
                                             const RingPtr& ring) {
  std::vector<Polynomial> basis;
  for (Polynomial f : polys) {
    for (const auto& b : basis) {
      Residue c = f.coefficient(b.leading().mono);
      if (c) f -= b.scaled(c);
    }
    if (f.is_zero()) continue;
    f = f.scaled(fp_inv(f.leading().coeff, ring->prime()));
    for (auto& b : basis) {
      Residue c = b.coefficient(f.leading().mono);
      if (c) b -= f.scaled(c);
    }
    basis.push_back(f);
  }
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.leading().mono, b.leading().mono) > 0;
  });
  return basis;
}

}  // namespace detail

/// The E8 reflection data bundled for the Spin(16) model at one prime.
struct E8PhiSetup {
  PontryaginRing model;
  RingPtr chern;
  RingMap to_chern;

  explicit E8PhiSetup(Residue p)
      : model(ModelKind::D, 8, p),
        chern(phi_data(p).chern()),
        to_chern(pontryagin_to_chern(model, chern)) {}
};

struct InvariantSpace {
  int degree = 0;
  std::size_t ansatz_size = 0;      ///< number of monomials in the generic combination
  std::size_t solution_dim = 0;     ///< before projecting mod Q
  std::vector<Polynomial> basis;    ///< echelonized normal forms mod Q
  std::size_t dimension() const { return basis.size(); }
};

/// Polynomials f of the given degree in Z/p[p_1..p_7, c_8] with
/// phi(f) = f mod J (J in c-variables, containing c_1^2), projected to
/// Z/p[p_1..p_7, c_8] / Q.
inline InvariantSpace invariant_space(int degree, const IdealSpec& congruence,
                                      const IdealSpec& quotient) {
  const Residue p = congruence.ring()->prime();
  E8PhiSetup setup(p);
  if (!same_ring(congruence.ring(), setup.chern))
    throw StructuralError("invariant_space: congruence ideal must live in the Chern ring");
  if (!same_ring(quotient.ring(), setup.model.ring()))
    throw StructuralError("invariant_space: quotient ideal must live in the Spin(16) model ring");
  if (!ideal_contains(congruence, Polynomial::variable(setup.chern, 0, 2)))
    throw PreconditionError("invariant_space: the congruence ideal must contain c1^2");

  const PhiData& phi = phi_data(p);
  auto monos = weighted_monomials(setup.model.ring(), degree);
  std::vector<Polynomial> residues;
  for (Monomial m : monos) {
    Polynomial c = mod_c1_squared(setup.to_chern(Polynomial::monomial(setup.model.ring(), m)));
    residues.push_back(normal_form(phi.phi_truncated(c) - c, congruence));
  }
  InvariantSpace space;
  space.degree = degree;
  space.ansatz_size = monos.size();
  auto null = nullspace(detail::coefficient_matrix(residues, p));
  space.solution_dim = null.size();
  std::vector<Polynomial> projected;
  for (const auto& v : null)
    projected.push_back(normal_form(detail::combination(setup.model.ring(), monos, v), quotient));
  space.basis = detail::echelon_basis(projected, setup.model.ring());
  return space;
}

/// True iff f (already reduced mod Q) lies in the span of the space.
inline bool in_span(const InvariantSpace& space, Polynomial f) {
  for (const auto& b : space.basis) {
    Residue c = f.coefficient(b.leading().mono);
    if (c) f -= b.scaled(c);
  }
  return f.is_zero();
}

/// The congruence and quotient ideals attached to each E8 generator degree
/// by the invariant-theory propositions.
struct InvariantProblem {
  int degree;
  std::string congruence;  ///< generators in c-variables
  std::string quotient;    ///< generators in the Spin(16) model
  std::vector<std::string> span;  ///< products of catalog generators
  /// Ideal modulo which the products are compared with the space; nonzero
  /// only where a product inherits the indeterminacy of a factor known
  /// modulo (p1^2).
  std::string span_quotient = "0";
};

inline const std::vector<InvariantProblem>& e8_invariant_problems() {
  static const std::vector<InvariantProblem> kProblems = {
      {4, "c1^2", "0", {"xhat4"}},
      {16, "c1^2", "0", {"xhat16", "xhat4^4"}},
      {24, "c1^2, c2^2", "p1^2", {"xhat24"}},
      {28, "c1^2, c2^2", "p1^2", {"xhat28", "xhat4*xhat24"}},
      {36, "c1^2", "0",
       {"xhat36", "xhat4*xhat16^2", "xhat4^2*xhat28", "xhat4^3*xhat24", "xhat4^5*xhat16",
        "xhat4^9"},
       "p1^4"},
      {40, "c1^2, c2", "p1", {"xhat40", "xhat24*xhat16"}},
      {48, "c1^2, c2", "p1", {"xhat48", "xhat24^2", "xhat16^3"}},
  };
  return kProblems;
}

inline const InvariantProblem& e8_invariant_problem(int degree) {
  for (const auto& pr : e8_invariant_problems())
    if (pr.degree == degree) return pr;
  throw PreconditionError("no invariant-theory statement for degree " + std::to_string(degree));
}

inline IdealSpec chern_ideal(const RingPtr& chern, const std::string& gens) {
  std::vector<Polynomial> g;
  for (const auto& s : detail::split_top_level(gens, ','))
    if (!s.empty() && s != "0") g.push_back(parse_polynomial(chern, s));
  return IdealSpec("(" + gens + ")", chern, std::move(g));
}

struct InvarianceCheck {
  bool pass = false;
  int degree = 0;
  std::size_t dimension = 0;           ///< dimension of the computed space mod Q
  std::size_t expected_dimension = 0;  ///< number of catalog products spanning it
  bool span_matches = false;           ///< the catalog products span the whole space
  std::string span_quotient;           ///< ideal used for the span comparison
  std::optional<Polynomial> witness;   ///< phi(xhat) - xhat mod J
  std::string note;
};

/// Checks that xhat_k (E8) lies in the invariant space of its proposition and
/// that the catalog products span that space.
inline InvarianceCheck verify_catalog_invariance(Group g, int k, Residue p) {
  if (g != Group::E8)
    throw PreconditionError("verify_catalog_invariance: only E8 generators are defined by "
                            "reflection invariance; other groups use pullbacks");
  const GroupModel& gm = group_model(g, p);
  const InvariantProblem& pr = e8_invariant_problem(k);
  E8PhiSetup setup(p);
  IdealSpec congruence = chern_ideal(setup.chern, pr.congruence);
  IdealSpec quotient = parse_ideal(gm, pr.quotient);
  InvariantSpace space = invariant_space(k, congruence, quotient);

  InvarianceCheck r;
  r.degree = k;
  r.dimension = space.dimension();
  r.expected_dimension = pr.span.size();
  const Polynomial& x = *gm.entry(k).xhat;
  Polynomial xc = mod_c1_squared(setup.to_chern(x));
  r.witness = normal_form(phi_data(p).phi_truncated(xc) - xc, congruence);
  bool member = in_span(space, normal_form(x, quotient));

  IdealSpec span_quotient = parse_ideal(gm, pr.span_quotient).plus(quotient.generators());
  InvariantSpace reduced_space = space;
  std::vector<Polynomial> reduced_basis;
  for (const auto& b : space.basis) reduced_basis.push_back(normal_form(b, span_quotient));
  reduced_space.basis = detail::echelon_basis(reduced_basis, gm.model_ring());
  std::vector<Polynomial> products;
  for (const auto& s : pr.span)
    products.push_back(
        normal_form(parse_polynomial(gm.model_ring(), s, gm.resolver()), span_quotient));
  bool all_in = true;
  for (const auto& f : products) all_in = all_in && in_span(reduced_space, f);
  auto span = detail::echelon_basis(products, gm.model_ring());
  r.span_matches = all_in && span.size() == reduced_space.dimension();
  r.span_quotient = pr.span_quotient;
  r.pass = r.witness->is_zero() && member && r.span_matches &&
           r.dimension == r.expected_dimension;
  if (!r.witness->is_zero()) r.note = "xhat is not invariant modulo the congruence ideal";
  else if (!member) r.note = "xhat is not in the computed space";
  else if (!r.span_matches) r.note = "catalog products do not span the computed space";
  return r;
}

// ---------------------------------------------------------------------------

struct SubringDegreeReport {
  int degree = 0;
  std::size_t monomials = 0;
  std::size_t big_side_dim = 0;    ///< dim {f : f in big after p -> c}
  std::size_t small_side_dim = 0;  ///< dim {f : f in small}
  bool equal = false;
};

struct SubringReport {
  std::vector<SubringDegreeReport> degrees;
  bool all_equal() const {
    for (const auto& d : degrees)
      if (!d.equal) return false;
    return true;
  }
};

/// Compares, degree by degree up to the bound, big ∩ (subring) with small:
/// f in the subring lies in big (after substituting via to_chern) iff f
/// lies in small.  Equality of the two kernels is tested by ranks.
inline SubringReport subring_intersection_check(const IdealSpec& big, const IdealSpec& small,
                                                const RingMap& to_chern, int degree_bound) {
  if (!same_ring(to_chern.source(), small.ring()) || !same_ring(to_chern.target(), big.ring()))
    throw StructuralError("subring_intersection_check: ring mismatch");
  const Residue p = big.ring()->prime();
  SubringReport rep;
  const int step = 2;
  for (int d = 0; d <= degree_bound; d += step) {
    auto monos = weighted_monomials(small.ring(), d);
    if (monos.empty()) continue;
    std::vector<Polynomial> a, b, both;
    for (Monomial m : monos) {
      Polynomial f = Polynomial::monomial(small.ring(), m);
      a.push_back(normal_form(to_chern(f), big));
      b.push_back(normal_form(f, small));
    }
    // Kernels agree iff rank A = rank B = rank [A; B] (rows of both stacked).
    FpMatrix ma = detail::coefficient_matrix(a, p);
    FpMatrix mb = detail::coefficient_matrix(b, p);
    FpMatrix stacked(ma.rows() + mb.rows(), monos.size(), p);
    for (std::size_t r = 0; r < ma.rows(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c) stacked.at(r, c) = ma.at(r, c);
    for (std::size_t r = 0; r < mb.rows(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c) stacked.at(ma.rows() + r, c) = mb.at(r, c);
    std::size_t ra = rank(ma), rb = rank(mb), rs = rank(stacked);
    SubringDegreeReport dr;
    dr.degree = d;
    dr.monomials = monos.size();
    dr.big_side_dim = monos.size() - ra;
    dr.small_side_dim = monos.size() - rb;
    dr.equal = ra == rb && rb == rs;
    rep.degrees.push_back(dr);
  }
  return rep;
}

}  // namespace samelson

#endif  // SAMELSON_INVARIANTS_HPP

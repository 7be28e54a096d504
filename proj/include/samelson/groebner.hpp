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

#ifndef SAMELSON_GROEBNER_HPP
#define SAMELSON_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "samelson/polynomial.hpp"

namespace samelson {

/// Degree up to which Groebner bases are completed unless told otherwise.
inline constexpr int kDefaultDegreeCap = 256;

namespace detail {

struct OrderDesc {
  const RingSpec* ring;
  bool operator()(Monomial a, Monomial b) const { return ring->compare(a, b) > 0; }
};

inline Polynomial make_monic(const Polynomial& f) {
  if (f.is_zero()) return f;
  return f.scaled(fp_inv(f.leading().coeff, f.prime()));
}

// Full reduction of f by basis (all terms, not only the leading one).
inline Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  const RingPtr& ring = f.ring();
  const Residue p = ring->prime();
  std::vector<Monomial> lead;
  std::vector<Polynomial> tails;
  for (const auto& g : basis) {
    lead.push_back(g.leading().mono);
    // basis elements are monic; keep -tail so subtraction becomes addition
    std::vector<Term> t(g.terms().begin() + 1, g.terms().end());
    for (auto& term : t) term.coeff = fp_neg(term.coeff, p);
    tails.push_back(Polynomial::from_terms(ring, std::move(t)));
  }
  std::map<Monomial, Residue, OrderDesc> work(OrderDesc{ring.get()});
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);
  std::vector<Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    Residue c = it->second;
    work.erase(it);
    std::size_t j = 0;
    while (j < lead.size() && !lead[j].divides(m)) ++j;
    if (j == lead.size()) {
      rem.push_back({m, c});
      continue;
    }
    Monomial q = m.divided_by(lead[j]);
    for (const auto& t : tails[j].terms()) {
      Monomial mm = t.mono * q;
      Residue cc = fp_mul(t.coeff, c, p);
      auto [pos, inserted] = work.emplace(mm, cc);
      if (!inserted) {
        pos->second = fp_add(pos->second, cc, p);
        if (pos->second == 0) work.erase(pos);
      }
    }
  }
  return Polynomial::from_terms(ring, std::move(rem));
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = Monomial::lcm(f.leading().mono, g.leading().mono);
  return f.times_monomial(l.divided_by(f.leading().mono), 1) -
         g.times_monomial(l.divided_by(g.leading().mono), 1);
}

}  // namespace detail

/// Reduced Groebner basis of a homogeneous ideal, complete in every degree
/// up to degree_cap.  Buchberger with the normal selection strategy and the
/// coprime-leading-monomial criterion.
inline std::vector<Polynomial> groebner(const std::vector<Polynomial>& gens,
                                        int degree_cap = kDefaultDegreeCap) {
  if (gens.empty()) throw PreconditionError("groebner: empty generator list");
  const RingPtr ring = gens.front().ring();
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw StructuralError("groebner: generators in different rings");
    CohDegree d = g.coh_degree();
    if (d.is_zero()) continue;
    if (!d.is_homogeneous()) throw PreconditionError("groebner: generators must be homogeneous");
    Polynomial r = detail::make_monic(detail::reduce(g, basis));
    if (!r.is_zero() && r.coh_degree().degree <= degree_cap) basis.push_back(r);
  }

  struct Pair {
    int degree;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial a = basis[i].leading().mono, b = basis[j].leading().mono;
      if (Monomial::coprime(a, b)) continue;
      int d = ring->degree(Monomial::lcm(a, b));
      if (d <= degree_cap) pairs.push_back({d, i, j});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return std::tie(a.degree, a.j, a.i) < std::tie(b.degree, b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);
    Polynomial r = detail::reduce(detail::s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(detail::make_monic(r));
    add_pairs(basis.size() - 1);
  }

  // Minimalize, then inter-reduce tails.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      Monomial a = basis[j].leading().mono, b = basis[i].leading().mono;
      if (a.divides(b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(detail::make_monic(detail::reduce(minimal[i], others)));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.leading().mono, b.leading().mono) < 0;
  });
  return reduced;
}

/// A homogeneous ideal with its Groebner basis, valid up to a degree cap.
class IdealSpec {
 public:
  IdealSpec(std::string name, RingPtr ring, std::vector<Polynomial> gens,
            int degree_cap = kDefaultDegreeCap)
      : name_(std::move(name)), ring_(std::move(ring)), gens_(std::move(gens)), cap_(degree_cap) {
    for (const auto& g : gens_)
      if (!same_ring(g.ring(), ring_)) throw StructuralError(name_ + ": generator in wrong ring");
    std::vector<Polynomial> nonzero;
    for (const auto& g : gens_)
      if (!g.is_zero()) nonzero.push_back(g);
    if (!nonzero.empty()) basis_ = groebner(nonzero, cap_);
  }

  const std::string& name() const { return name_; }
  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  int degree_cap() const { return cap_; }

  /// The same ideal with more generators.
  IdealSpec plus(const std::vector<Polynomial>& more, std::string name = {}) const {
    std::vector<Polynomial> g = gens_;
    g.insert(g.end(), more.begin(), more.end());
    return IdealSpec(name.empty() ? name_ + "+..." : std::move(name), ring_, std::move(g), cap_);
  }

 private:
  std::string name_;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  int cap_;
  std::vector<Polynomial> basis_;
};

/// Remainder of f on division by the reduced basis; zero iff f lies in I.
inline Polynomial normal_form(const Polynomial& f, const IdealSpec& ideal) {
  if (!same_ring(f.ring(), ideal.ring()))
    throw StructuralError("normal_form: polynomial and ideal live in different rings");
  for (const auto& t : f.terms())
    if (ideal.ring()->degree(t.mono) > ideal.degree_cap())
      throw PreconditionError("normal_form: degree " + std::to_string(ideal.ring()->degree(t.mono)) +
                              " exceeds the Groebner basis cap " +
                              std::to_string(ideal.degree_cap()) + " of " + ideal.name());
  return detail::reduce(f, ideal.basis());
}

inline bool ideal_contains(const IdealSpec& ideal, const Polynomial& f) {
  return normal_form(f, ideal).is_zero();
}

}  // namespace samelson

#endif  // SAMELSON_GROEBNER_HPP

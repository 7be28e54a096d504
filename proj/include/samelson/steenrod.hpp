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

#ifndef SAMELSON_STEENROD_HPP
#define SAMELSON_STEENROD_HPP

#include <vector>

#include "samelson/symfun.hpp"

namespace samelson {

/// P^1 in the t-world: the derivation with P^1(t_i) = t_i^p.
inline Polynomial p1_t(const TWorld& w, const Polynomial& f) {
  if (!same_ring(f.ring(), w.ring)) throw StructuralError("p1_t: not a t-polynomial");
  const Residue p = w.ring->prime();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(w.m); ++i) {
      unsigned e = t.mono[i];
      if (e == 0) continue;
      Residue c = fp_mul(t.coeff, e % p, p);
      if (c == 0) continue;
      Monomial m = t.mono;
      m.set(i, e - 1 + p);
      out.push_back({m, c});
    }
  }
  return Polynomial::from_terms(w.ring, std::move(out));
}

/// P^1 on a Pontryagin model ring, with the images of the generators
/// computed once at construction.
class SteenrodContext {
 public:
  explicit SteenrodContext(PontryaginRing model) : model_(std::move(model)) {
    const Residue p = model_.prime();
    q_ = static_cast<int>((p - 1) / 2);
    power_sums_.push_back(Polynomial::constant(model_.ring(), 0));
    for (int j = 1; j <= q_; ++j) power_sums_.push_back(girard_power_sum(j, model_));
    const int m = model_.rank();
    const int last = model_.kind() == ModelKind::D ? m - 1 : m;
    for (int n = 1; n <= last; ++n) images_.push_back(pontryagin_image(n));
    if (model_.kind() == ModelKind::D) images_.push_back(model_.euler() * power_sums_[q_]);
  }

  const PontryaginRing& model() const { return model_; }
  const RingPtr& ring() const { return model_.ring(); }
  Residue prime() const { return model_.prime(); }
  int q() const { return q_; }

  /// s_j for 1 <= j <= q.
  const Polynomial& power_sum(int j) const { return power_sums_.at(static_cast<std::size_t>(j)); }

  /// P^1 of the model ring's generator with the given index.
  const Polynomial& p1_generator(std::size_t var) const { return images_.at(var); }

  const Polynomial& p1_generator(std::string_view name) const {
    auto idx = ring()->index_of(name);
    if (!idx) throw StructuralError("p1_generator: no generator " + std::string(name));
    return images_[*idx];
  }

  /// Extension of the generator images as a derivation.  Homogeneous input
  /// only; the degree rises by 2(p-1).
  Polynomial p1(const Polynomial& f) const {
    if (!same_ring(f.ring(), ring())) throw StructuralError("p1: polynomial is not in the model ring");
    CohDegree d = f.coh_degree();
    if (d.is_zero()) return Polynomial(ring());
    if (!d.is_homogeneous()) throw PreconditionError("p1: input is not homogeneous");
    const Residue p = prime();
    Polynomial out(ring());
    // Group terms by the variable differentiated to share one product per
    // (variable, cofactor) pair.
    for (std::size_t i = 0; i < ring()->size(); ++i) {
      std::vector<Term> cofactor;
      for (const auto& t : f.terms()) {
        unsigned e = t.mono[i];
        if (e == 0) continue;
        Residue c = fp_mul(t.coeff, e % p, p);
        if (c == 0) continue;
        Monomial m = t.mono;
        m.set(i, e - 1);
        cofactor.push_back({m, c});
      }
      if (cofactor.empty()) continue;
      out += Polynomial::from_terms(ring(), std::move(cofactor)) * images_[i];
    }
    return out;
  }

  /// P^2 = (1/2) P^1 P^1.
  Polynomial p2(const Polynomial& f) const {
    return p1(p1(f)).scaled(fp_inv(2, prime()));
  }

 private:
  // 2 sum_{i=0}^{q-1} (-1)^i p_{n+i} s_{q-i} + 2 (-1)^q (n+q) p_{n+q}
  Polynomial pontryagin_image(int n) const {
    const Residue p = prime();
    Polynomial r(ring());
    for (int i = 0; i < q_; ++i) {
      Polynomial pn = model_.pontryagin(n + i);
      if (pn.is_zero()) continue;
      Polynomial t = pn * power_sums_[static_cast<std::size_t>(q_ - i)];
      r += (i % 2 == 0) ? t : -t;
    }
    Polynomial top = model_.pontryagin(n + q_);
    if (!top.is_zero()) {
      std::int64_t c = (q_ % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(n + q_);
      r += top.scaled(fp_reduce(c, p));
    }
    return r.scaled(2);
  }

  PontryaginRing model_;
  int q_ = 0;
  std::vector<Polynomial> power_sums_;
  std::vector<Polynomial> images_;
};

}  // namespace samelson

#endif  // SAMELSON_STEENROD_HPP

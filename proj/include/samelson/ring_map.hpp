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

#ifndef SAMELSON_RING_MAP_HPP
#define SAMELSON_RING_MAP_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "samelson/polynomial.hpp"

namespace samelson {

/// Substitution homomorphism source -> target given by the image of each
/// source variable.  Images must be zero or homogeneous of the variable's
/// degree, so the map is degree preserving.
class RingMap {
 public:
  RingMap(std::string name, RingPtr source, RingPtr target, std::vector<Polynomial> images)
      : name_(std::move(name)),
        source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(images)) {
    if (images_.size() != source_->size())
      throw StructuralError(name_ + ": expected " + std::to_string(source_->size()) + " images");
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const auto& img = images_[i];
      if (!same_ring(img.ring(), target_))
        throw StructuralError(name_ + ": image of " + source_->var(i).name +
                              " is not in the target ring");
      CohDegree d = img.coh_degree();
      if (d.is_zero()) continue;
      if (!d.is_homogeneous() || d.degree != source_->var(i).degree)
        throw StructuralError(name_ + ": image of " + source_->var(i).name +
                              " does not have degree " + std::to_string(source_->var(i).degree));
    }
  }

  static RingMap identity(const RingPtr& ring) {
    std::vector<Polynomial> imgs;
    for (std::size_t i = 0; i < ring->size(); ++i) imgs.push_back(Polynomial::variable(ring, i));
    return RingMap("id", ring, ring, std::move(imgs));
  }

  /// Builds a map from "name = image" pairs; unnamed source variables map to
  /// the target variable of the same name.
  static RingMap from_assignments(std::string name, const RingPtr& source, const RingPtr& target,
                                  const std::map<std::string, std::string>& images) {
    std::vector<Polynomial> imgs;
    for (const auto& v : source->vars()) {
      auto it = images.find(v.name);
      if (it != images.end()) {
        imgs.push_back(parse_polynomial(target, it->second));
      } else if (target->index_of(v.name)) {
        imgs.push_back(Polynomial::variable(target, v.name));
      } else {
        throw StructuralError(name + ": no image for " + v.name);
      }
    }
    for (const auto& [k, _] : images)
      if (!source->index_of(k)) throw StructuralError(name + ": source has no variable " + k);
    return RingMap(std::move(name), source, target, std::move(imgs));
  }

  const std::string& name() const { return name_; }
  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const Polynomial& image(std::size_t i) const { return images_.at(i); }

  Polynomial operator()(const Polynomial& f) const { return apply(f, std::nullopt, 0); }

  /// Same as operator() but computed in target / (var^(max_exp+1)).
  Polynomial apply_truncated(const Polynomial& f, std::size_t var, unsigned max_exp) const {
    return apply(f, var, max_exp);
  }

  /// (other ∘ this): first this, then other.
  RingMap then(const RingMap& other) const {
    if (!same_ring(target_, other.source_)) throw StructuralError("cannot compose " + name_);
    std::vector<Polynomial> imgs;
    for (const auto& img : images_) imgs.push_back(other(img));
    return RingMap(other.name_ + "∘" + name_, source_, other.target_, std::move(imgs));
  }

 private:
  Polynomial apply(const Polynomial& f, std::optional<std::size_t> var, unsigned max_exp) const {
    if (!same_ring(f.ring(), source_))
      throw StructuralError(name_ + ": argument is not in the source ring");
    auto mul = [&](const Polynomial& a, const Polynomial& b) {
      return var ? mul_truncated(a, b, *var, max_exp) : a * b;
    };
    // powers[i][e] = image_i^e, filled lazily.
    std::vector<std::vector<Polynomial>> powers(images_.size());
    auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial::constant(target_, 1));
      while (pw.size() <= e) pw.push_back(mul(pw.back(), images_[i]));
      return pw[e];
    };
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
      Polynomial prod = Polynomial::constant(target_, t.coeff);
      for (std::size_t i = 0; i < images_.size() && !prod.is_zero(); ++i) {
        unsigned e = t.mono[i];
        if (e) prod = mul(prod, power(i, e));
      }
      out.insert(out.end(), prod.terms().begin(), prod.terms().end());
    }
    return Polynomial::from_terms(target_, std::move(out));
  }

  std::string name_;
  RingPtr source_;
  RingPtr target_;
  std::vector<Polynomial> images_;
};

inline Polynomial apply_map(const RingMap& m, const Polynomial& f) { return m(f); }

}  // namespace samelson

#endif  // SAMELSON_RING_MAP_HPP

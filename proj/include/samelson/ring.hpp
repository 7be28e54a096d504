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

#ifndef SAMELSON_RING_HPP
#define SAMELSON_RING_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "samelson/errors.hpp"
#include "samelson/fp.hpp"

namespace samelson {

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector packed one byte per variable into a 64-bit word.  The
/// packing makes multiplication a single add and hashing trivial.
class Monomial {
 public:
  constexpr Monomial() = default;

  static constexpr Monomial from_bits(std::uint64_t bits) {
    Monomial m;
    m.bits_ = bits;
    return m;
  }

  static Monomial from_exponents(const std::vector<unsigned>& exps) {
    if (exps.size() > kMaxVars) throw StructuralError("monomial has too many variables");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }

  static Monomial variable(std::size_t i, unsigned e = 1) {
    Monomial m;
    m.set(i, e);
    return m;
  }

  constexpr unsigned operator[](std::size_t i) const {
    return static_cast<unsigned>((bits_ >> (8 * i)) & 0xffu);
  }

  void set(std::size_t i, unsigned e) {
    if (e > 255) throw StructuralError("exponent overflow (max 255)");
    bits_ = (bits_ & ~(std::uint64_t{0xff} << (8 * i))) | (std::uint64_t{e} << (8 * i));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_one() const { return bits_ == 0; }

  unsigned total_exponent() const {
    unsigned s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) s += (*this)[i];
    return s;
  }

  friend Monomial operator*(Monomial a, Monomial b) {
    std::uint64_t sum = a.bits_ + b.bits_;
    std::uint64_t carries = (sum ^ a.bits_ ^ b.bits_) & 0x0101010101010100ull;
    if (carries != 0 || sum < a.bits_) throw StructuralError("exponent overflow (max 255)");
    return from_bits(sum);
  }

  bool divides(Monomial other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if ((*this)[i] > other[i]) return false;
    return true;
  }

  /// this / d; requires d | this.
  Monomial divided_by(Monomial d) const { return from_bits(bits_ - d.bits_); }

  static Monomial lcm(Monomial a, Monomial b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.set(i, std::max(a[i], b[i]));
    return m;
  }

  static bool coprime(Monomial a, Monomial b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a[i] != 0 && b[i] != 0) return false;
    return true;
  }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

struct MonomialHash {
  std::size_t operator()(Monomial m) const noexcept {
    std::uint64_t x = m.bits() * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

struct Variable {
  std::string name;
  int degree = 0;  // cohomological degree, positive and even
};

/// A graded polynomial ring F_p[x_1, ..., x_n] with named variables.
/// Immutable; shared between polynomials through RingPtr.
class RingSpec {
 public:
  RingSpec(Residue prime, std::vector<Variable> vars, std::string label = {})
      : prime_(prime), vars_(std::move(vars)), label_(std::move(label)) {
    if (!is_prime(prime_) || prime_ <= 5 || prime_ > kMaxPrime)
      throw StructuralError("ring prime must be a prime in (5, " + std::to_string(kMaxPrime) +
                            "], got " + std::to_string(prime_));
    if (vars_.size() > kMaxVars) throw StructuralError("ring has more than 8 variables");
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.name.empty()) throw StructuralError("empty variable name");
      if (!seen.insert(v.name).second) throw StructuralError("duplicate variable name " + v.name);
      if (v.degree <= 0 || v.degree % 2 != 0)
        throw StructuralError("variable " + v.name + " must have positive even degree");
    }
  }

  Residue prime() const { return prime_; }
  std::size_t size() const { return vars_.size(); }
  const Variable& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::string& label() const { return label_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  int degree(Monomial m) const {
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) d += static_cast<int>(m[i]) * vars_[i].degree;
    return d;
  }

  /// Graded reverse lexicographic order: higher cohomological degree wins;
  /// on ties the monomial with the smaller exponent in the last variable
  /// where they differ is the larger one.  Returns -1, 0, 1.
  int compare(Monomial a, Monomial b) const {
    if (a == b) return 0;
    int da = degree(a), db = degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = vars_.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
  }

  bool same_as(const RingSpec& other) const {
    if (this == &other) return true;
    if (prime_ != other.prime_ || vars_.size() != other.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name != other.vars_[i].name || vars_[i].degree != other.vars_[i].degree)
        return false;
    return true;
  }

 private:
  Residue prime_;
  std::vector<Variable> vars_;
  std::string label_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(Residue prime, std::vector<Variable> vars, std::string label = {}) {
  return std::make_shared<const RingSpec>(prime, std::move(vars), std::move(label));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || a->same_as(*b); }

}  // namespace samelson

#endif  // SAMELSON_RING_HPP

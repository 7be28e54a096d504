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

#ifndef SAMELSON_FP_HPP
#define SAMELSON_FP_HPP

// Scalars of the prime field F_p.  Residues are kept in [0, p-1]; the prime
// is bounded by 2^16 so that a product of two residues fits in 32 bits and
// sums of products can be accumulated in 64 bits without reduction.

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "samelson/errors.hpp"

namespace samelson {

using Residue = std::uint32_t;

inline constexpr Residue kMaxPrime = 65521;

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr Residue fp_reduce(std::int64_t v, Residue p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

constexpr Residue fp_add(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}

constexpr Residue fp_sub(Residue a, Residue b, Residue p) {
  return a >= b ? a - b : a + p - b;
}

constexpr Residue fp_neg(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

constexpr Residue fp_mul(Residue a, Residue b, Residue p) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p);
}

constexpr Residue fp_pow(Residue a, std::uint64_t e, Residue p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
inline Residue fp_inv(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw DivisionByZeroError("fp_inv: zero has no inverse mod " + std::to_string(p));
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return fp_reduce(t, p);
}

inline Residue fp_div(Residue a, Residue b, Residue p) { return fp_mul(a, fp_inv(b, p), p); }

/// Signed representative in (-p/2, p/2].
constexpr std::int64_t fp_signed(Residue a, Residue p) {
  return a > p / 2 ? static_cast<std::int64_t>(a) - p : static_cast<std::int64_t>(a);
}

/// An exact rational number, used for catalog data that must serve every
/// prime.  Resolved to a residue only once the prime is known.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  constexpr void normalize() {
    if (den == 0) throw DivisionByZeroError("Rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Residue to_residue(Residue p) const {
    return fp_mul(fp_reduce(num, p), fp_inv(fp_reduce(den, p), p), p);
  }

  friend constexpr Rational operator-(Rational a) { return Rational(-a.num, a.den); }
  friend constexpr Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

/// Parses "n" or "n/d" (optionally signed).
inline Rational parse_rational(std::string_view text) {
  auto to_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw ParseError("empty integer in '" + std::string(text) + "'");
    std::int64_t v = 0;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw ParseError("bad integer in '" + std::string(text) + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw ParseError("bad digit in '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

}  // namespace samelson

#endif  // SAMELSON_FP_HPP

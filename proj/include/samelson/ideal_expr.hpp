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

#ifndef SAMELSON_IDEAL_EXPR_HPP
#define SAMELSON_IDEAL_EXPR_HPP

// Ideal expressions such as "I3 + p3 + p4 + p7^2 + xhat40" or
// "(p1, p3^2, c6) + xhat16^2".  Terms are separated by top-level '+'; each
// term is a named ideal I0..I8 (E8 only), a parenthesised comma-separated
// generator list, or a single generator expression.

#include <string>
#include <string_view>
#include <vector>

#include "samelson/groebner.hpp"
#include "samelson/models.hpp"

namespace samelson {

/// Generators of the E8 ideals I0..I8 as expressions.
inline std::string_view named_ideal_text(int index) {
  static const char* const kText[] = {
      "(p1, p2^2, p3^3, p4^2, p6^2, c8)",
      "I0 + (p3, p6)",
      "I0 + (p2, p3^2, p4, p7^2)",
      "I0 + (p2, p3^2, p6)",
      "I0 + (p2, p3^2, p4)",
      "I0 + (p2, p3, p4, p6, p7)",
      "I0 + (p2, p3^2, p4, p6)",
      "I0 + (p2, p3^2, p4, p6, p7^2)",
      "I0 + (p2, p4, p7^4, xhat24)",
  };
  if (index < 0 || index > 8) throw ParseError("no ideal I" + std::to_string(index));
  return kText[index];
}

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')' in ideal expression");
    } else if (s[i] == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in ideal expression");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

// True for "(...)" where the first '(' closes at the last character.
inline bool wrapped_in_parens(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')' && --depth == 0 && i + 1 != s.size()) return false;
  }
  return true;
}

inline void collect_generators(const GroupModel& gm, std::string_view expr, int depth,
                               std::vector<Polynomial>& out) {
  if (depth > 4) throw ParseError("ideal expression nests too deeply");
  const RingPtr& ring = gm.final_ring();
  NameResolver resolve = gm.resolver();
  for (const auto& item : split_top_level(expr, '+')) {
    if (item.empty()) throw ParseError("empty term in ideal expression '" + std::string(expr) + "'");
    if (item.size() == 2 && item[0] == 'I' && item[1] >= '0' && item[1] <= '8') {
      if (gm.group() != Group::E8) throw ParseError("ideal " + item + " is only defined for E8");
      collect_generators(gm, named_ideal_text(item[1] - '0'), depth + 1, out);
      continue;
    }
    if (wrapped_in_parens(item)) {
      // "(a, b, c)" is a generator list; "(a + b)" is a single generator.
      for (const auto& g : split_top_level(item.substr(1, item.size() - 2), ',')) {
        if (g.empty()) throw ParseError("empty generator in '" + item + "'");
        out.push_back(parse_polynomial(ring, g, resolve));
      }
      continue;
    }
    if (item.find(',') != std::string::npos)
      throw ParseError("',' outside a generator list in '" + item + "'");
    out.push_back(parse_polynomial(ring, item, resolve));
  }
}

}  // namespace detail

/// Parses an ideal expression in the group's final ring.
inline IdealSpec parse_ideal(const GroupModel& gm, std::string_view expr,
                             int degree_cap = kDefaultDegreeCap) {
  std::string text = detail::trim(expr);
  std::vector<Polynomial> gens;
  if (!text.empty() && text != "0") detail::collect_generators(gm, text, 0, gens);
  for (const auto& g : gens)
    if (!g.is_zero() && !g.coh_degree().is_homogeneous())
      throw ParseError("ideal generator is not homogeneous in '" + text + "'");
  return IdealSpec(text, gm.final_ring(), std::move(gens), degree_cap);
}

}  // namespace samelson

#endif  // SAMELSON_IDEAL_EXPR_HPP

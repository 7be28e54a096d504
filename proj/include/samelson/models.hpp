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

#ifndef SAMELSON_MODELS_HPP
#define SAMELSON_MODELS_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "samelson/generated/catalog_data.hpp"
#include "samelson/steenrod.hpp"

namespace samelson {

enum class Group { G2, F4, E6, E7, E8 };

inline constexpr Group kAllGroups[] = {Group::G2, Group::F4, Group::E6, Group::E7, Group::E8};

inline std::string group_name(Group g) {
  switch (g) {
    case Group::G2: return "G2";
    case Group::F4: return "F4";
    case Group::E6: return "E6";
    case Group::E7: return "E7";
    case Group::E8: return "E8";
  }
  return "?";
}

inline Group parse_group(std::string_view s) {
  for (Group g : kAllGroups)
    if (group_name(g) == s) return g;
  throw UnknownGroupError("unknown group '" + std::string(s) + "' (expected G2, F4, E6, E7 or E8)");
}

/// The type t(G): G is rationally a product of spheres S^{2n-1}, n in t(G).
inline std::vector<int> group_types(Group g) {
  switch (g) {
    case Group::G2: return {2, 6};
    case Group::F4: return {2, 6, 8, 12};
    case Group::E6: return {2, 5, 6, 8, 9, 12};
    case Group::E7: return {2, 6, 8, 10, 12, 14, 18};
    case Group::E8: return {2, 8, 12, 14, 18, 20, 24, 30};
  }
  throw UnknownGroupError("unknown group");
}

/// G is p-regular iff p >= max t(G).
inline bool is_p_regular(Group g, Residue p) {
  return is_prime(p) && p >= static_cast<Residue>(group_types(g).back());
}

/// Spin(n) whose classifying space models the group.
inline int model_spin_dimension(Group g) {
  switch (g) {
    case Group::G2: return 7;
    case Group::F4: return 9;
    case Group::E6: return 10;
    case Group::E7: return 12;
    case Group::E8: return 16;
  }
  throw UnknownGroupError("unknown group");
}

/// How well the catalog polynomial determines the restriction of x_k.
enum class Annotation {
  Exact,         ///< rho^*(x_k) = xhat_k
  ModP1Squared,  ///< rho^*(x_k) = xhat_k mod (p_1^2)
  ModP1,         ///< rho^*(x_k) = xhat_k mod (p_1)
  Unknown,       ///< no representative
};

inline std::string annotation_name(Annotation a) {
  switch (a) {
    case Annotation::Exact: return "exact";
    case Annotation::ModP1Squared: return "mod_p1^2";
    case Annotation::ModP1: return "mod_p1";
    case Annotation::Unknown: return "unknown";
  }
  return "?";
}

inline Annotation parse_annotation(std::string_view s) {
  for (Annotation a : {Annotation::Exact, Annotation::ModP1Squared, Annotation::ModP1,
                       Annotation::Unknown})
    if (annotation_name(a) == s) return a;
  throw ParseError("unknown annotation '" + std::string(s) + "'");
}

enum class Pullback { Theta1, Theta2, Theta3, RhoG2 };

inline Pullback parse_pullback(std::string_view s) {
  if (s == "theta1") return Pullback::Theta1;
  if (s == "theta2") return Pullback::Theta2;
  if (s == "theta3") return Pullback::Theta3;
  if (s == "rho_G2") return Pullback::RhoG2;
  throw ParseError("unknown map '" + std::string(s) + "'");
}

/// Z/p[x_4, x_12], the mod p cohomology of BG_2.
inline RingPtr make_g2_ring(Residue p) { return make_ring(p, {{"x4", 4}, {"x12", 12}}, "BG2"); }

/// The maps induced by Spin(9) -> Spin(10) -> Spin(12) -> Spin(16) and
/// G_2 -> Spin(7) on cohomology.
inline RingMap pullback(Pullback which, Residue p) {
  auto spin = [p](int n) { return PontryaginRing::spin(n, p).ring(); };
  switch (which) {
    case Pullback::Theta1:
      return RingMap::from_assignments("theta1", spin(16), spin(12),
                                       {{"p6", "c6^2"}, {"p7", "0"}, {"c8", "0"}});
    case Pullback::Theta2:
      return RingMap::from_assignments("theta2", spin(12), spin(10), {{"p5", "c5^2"}, {"c6", "0"}});
    case Pullback::Theta3:
      return RingMap::from_assignments("theta3", spin(10), spin(9), {{"c5", "0"}});
    case Pullback::RhoG2:
      return RingMap::from_assignments("rho_G2", spin(7), make_g2_ring(p),
                                       {{"p1", "x4"}, {"p2", "0"}, {"p3", "x12"}});
  }
  throw PreconditionError("unknown pullback");
}

// ---------------------------------------------------------------------------
// Catalog source data

struct CatalogLine {
  Group group;
  int k = 0;
  Annotation annotation = Annotation::Unknown;
  std::string polynomial;  ///< set for "=" lines
  std::optional<Pullback> via;
  Group from_group = Group::E8;
  int from_k = 0;
};

struct PartialDatum {
  Group group;
  int k = 0;
  Residue prime = 0;
  std::string ideal;
  std::string polynomial;
};

struct CatalogSource {
  std::vector<CatalogLine> lines;
  std::vector<PartialDatum> partials;
};

inline CatalogSource parse_catalog(std::string_view text) {
  CatalogSource src;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("catalog line " + std::to_string(lineno) + ": " + why);
    };
    if (first == "partial") {
      PartialDatum d;
      std::string g;
      if (!(ls >> g >> d.k >> d.prime)) fail("malformed partial datum");
      d.group = parse_group(g);
      std::string rest;
      std::getline(ls, rest);
      auto colon = rest.find(':');
      if (colon == std::string::npos) fail("partial datum needs ':'");
      d.ideal = rest.substr(0, colon);
      d.polynomial = rest.substr(colon + 1);
      src.partials.push_back(d);
      continue;
    }
    CatalogLine cl;
    cl.group = parse_group(first);
    std::string ann;
    if (!(ls >> cl.k >> ann)) fail("expected <group> <k> <annotation>");
    cl.annotation = parse_annotation(ann);
    std::string op;
    if (!(ls >> op)) {
      if (cl.annotation != Annotation::Unknown) fail("missing definition");
    } else if (op == "=") {
      std::getline(ls, cl.polynomial);
    } else if (op == "<-") {
      std::string map, g;
      if (!(ls >> map >> g >> cl.from_k)) fail("malformed pullback definition");
      cl.via = parse_pullback(map);
      cl.from_group = parse_group(g);
    } else {
      fail("expected '=' or '<-'");
    }
    src.lines.push_back(std::move(cl));
  }
  return src;
}

inline const CatalogSource& catalog_source() {
  static const CatalogSource src = parse_catalog(generated::kCatalogText);
  return src;
}

// ---------------------------------------------------------------------------
// Instantiated models

struct CatalogEntry {
  int k = 0;
  Annotation annotation = Annotation::Unknown;
  std::optional<Polynomial> xhat;  ///< in the model ring; empty when unknown
};

/// Result of xhat(): either a representative or the partial data known
/// about an unknown one.
struct XhatResult {
  std::optional<Polynomial> polynomial;
  Annotation annotation = Annotation::Unknown;
  std::vector<PartialDatum> partial;
};

class GroupModel {
 public:
  GroupModel(Group g, Residue p)
      : group_(g),
        steenrod_(PontryaginRing::spin(model_spin_dimension(g), p)),
        restriction_(g == Group::G2 ? pullback(Pullback::RhoG2, p)
                                    : RingMap::identity(steenrod_.ring())) {
    for (int t : group_types(g)) {
      CatalogEntry e = instantiate(g, 2 * t, p);
      entries_.emplace(2 * t, std::move(e));
    }
  }

  Group group() const { return group_; }
  Residue prime() const { return steenrod_.prime(); }
  const PontryaginRing& model() const { return steenrod_.model(); }
  const RingPtr& model_ring() const { return steenrod_.ring(); }
  const SteenrodContext& steenrod() const { return steenrod_; }

  /// Ring in which the cohomology of BG is computed: the model ring, except
  /// for G_2 where it is Z/p[x_4, x_12].
  const RingPtr& final_ring() const { return restriction_.target(); }
  const RingMap& restriction() const { return restriction_; }

  /// Cohomological degrees 2 t(G).
  std::vector<int> generator_degrees() const {
    std::vector<int> d;
    for (const auto& [k, _] : entries_) d.push_back(k);
    return d;
  }

  const CatalogEntry& entry(int k) const {
    auto it = entries_.find(k);
    if (it == entries_.end())
      throw PreconditionError(group_name(group_) + " has no generator in degree " +
                              std::to_string(k));
    return it->second;
  }

  /// Image of x_k in the final ring; throws for unknown representatives.
  Polynomial image(int k) const {
    const auto& e = entry(k);
    if (!e.xhat)
      throw RefusalError("x" + std::to_string(k) + " of " + group_name(group_) +
                         " has no known representative");
    return restriction_(*e.xhat);
  }

  /// Resolves "xhatK" to the catalog polynomial in the model ring.
  NameResolver resolver() const {
    return [this](std::string_view name) -> std::optional<Polynomial> {
      if (name.substr(0, 4) != "xhat") return std::nullopt;
      int k = 0;
      for (char ch : name.substr(4)) {
        if (ch < '0' || ch > '9') return std::nullopt;
        k = 10 * k + (ch - '0');
      }
      auto it = entries_.find(k);
      if (it == entries_.end() || !it->second.xhat) return std::nullopt;
      return *it->second.xhat;
    };
  }

 private:
  static CatalogEntry instantiate(Group g, int k, Residue p) {
    for (const auto& line : catalog_source().lines) {
      if (line.group != g || line.k != k) continue;
      CatalogEntry e;
      e.k = k;
      e.annotation = line.annotation;
      RingPtr ring = PontryaginRing::spin(model_spin_dimension(g), p).ring();
      if (!line.polynomial.empty()) {
        e.xhat = parse_polynomial(ring, line.polynomial);
      } else if (line.via) {
        CatalogEntry up = instantiate(line.from_group, line.from_k, p);
        if (!up.xhat) throw StructuralError("catalog: pullback of an unknown generator");
        e.xhat = pullback(*line.via, p)(*up.xhat);
      }
      if (e.xhat) {
        CohDegree d = e.xhat->coh_degree();
        if (!d.is_homogeneous() || d.degree != k)
          throw StructuralError("catalog: xhat" + std::to_string(k) + " of " + group_name(g) +
                                " is not homogeneous of degree " + std::to_string(k));
      }
      return e;
    }
    throw StructuralError("catalog has no entry for " + group_name(g) + " degree " +
                          std::to_string(k));
  }

  Group group_;
  SteenrodContext steenrod_;
  RingMap restriction_;
  std::map<int, CatalogEntry> entries_;
};

/// Shared model per (group, prime), built on first use.
inline const GroupModel& group_model(Group g, Residue p) {
  static std::mutex mu;
  static std::map<std::pair<Group, Residue>, std::unique_ptr<GroupModel>> cache;
  std::unique_lock<std::mutex> lock(mu);
  auto& slot = cache[{g, p}];
  if (!slot) slot = std::make_unique<GroupModel>(g, p);
  return *slot;
}

inline XhatResult xhat(Group g, int k, Residue p) {
  if (!is_prime(p) || p <= 5) throw PreconditionError("xhat: p must be a prime > 5");
  const auto& e = group_model(g, p).entry(k);
  XhatResult r;
  r.polynomial = e.xhat;
  r.annotation = e.annotation;
  for (const auto& d : catalog_source().partials)
    if (d.group == g && d.k == k) r.partial.push_back(d);
  return r;
}

}  // namespace samelson

#endif  // SAMELSON_MODELS_HPP

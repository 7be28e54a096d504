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

#ifndef SAMELSON_SAMELSON_HPP
#define SAMELSON_SAMELSON_HPP

// Partner enumeration, P^1 tables, coefficient extraction for the quadratic
// part of P^1 x_k, and the per-(group, prime) verdict report.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "samelson/generated/cases_data.hpp"
#include "samelson/ideal_expr.hpp"
#include "samelson/invariants.hpp"

namespace samelson {

// ---------------------------------------------------------------------------
// Partners

/// Type units i <= j and k with i + j = k + p - 1, all in t(G).
struct PartnerTriple {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const PartnerTriple&, const PartnerTriple&) = default;
};

inline void require_regular(Group g, Residue p) {
  if (!is_prime(p) || p <= 5) throw PreconditionError(std::to_string(p) + " is not a prime > 5");
  if (!is_p_regular(g, p))
    throw NotRegularError(group_name(g) + " is not " + std::to_string(p) + "-regular");
}

inline std::optional<int> partner_degree(Group g, Residue p, int i, int j) {
  int k = i + j - static_cast<int>(p) + 1;
  auto t = group_types(g);
  if (std::find(t.begin(), t.end(), k) == t.end()) return std::nullopt;
  return k;
}

inline std::vector<PartnerTriple> enumerate_partners(Group g, Residue p) {
  require_regular(g, p);
  std::vector<PartnerTriple> out;
  auto t = group_types(g);
  std::sort(t.begin(), t.end());
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a; b < t.size(); ++b)
      if (auto k = partner_degree(g, p, t[a], t[b])) out.push_back({t[a], t[b], *k});
  return out;
}

// ---------------------------------------------------------------------------
// Case table

/// A product x_a x_b of generators, in cohomological degrees, a <= b.
using Product = std::pair<int, int>;

inline std::string product_name(Product pr) {
  return "x" + std::to_string(pr.first) + "*x" + std::to_string(pr.second);
}

inline Product parse_product(std::string_view s) {
  auto star = s.find('*');
  if (star == std::string_view::npos) throw ParseError("expected a*b, got '" + std::string(s) + "'");
  int a = std::stoi(std::string(s.substr(0, star)));
  int b = std::stoi(std::string(s.substr(star + 1)));
  return {std::min(a, b), std::max(a, b)};
}

struct TableRow {
  Group group = Group::E8;
  Residue prime = 0;
  int k = 0;
  std::string ideal;
  int power = 1;  ///< 1 for P^1, 2 for P^2
};

struct DisplayedValue {
  int k = 0;
  Residue prime = 0;
  Product product;
  std::int64_t value = 0;
};

struct CaseBlock {
  std::string id;
  Group group = Group::E8;
  std::vector<Product> products;
  std::vector<std::pair<int, Residue>> runs;
  std::vector<std::string> ideals;
  std::vector<std::string> supplements;
  std::vector<Product> nonzero;
  std::vector<DisplayedValue> values;
  bool external = false;
  bool followup_p2 = false;
  bool addendum = false;
};

struct DerivationEdge {
  Group group = Group::E8;
  Residue prime = 0;
  Group from = Group::E8;
  std::vector<int> labels;
};

struct CaseTable {
  std::vector<TableRow> rows;
  std::vector<CaseBlock> cases;
  std::vector<DerivationEdge> edges;
};

inline CaseTable parse_case_table(std::string_view text) {
  CaseTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  CaseBlock* current = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("case table line " + std::to_string(lineno) + ": " + why);
    };
    auto rest = [&] {
      std::string r;
      std::getline(ls, r);
      return detail::trim(r);
    };
    if (word == "table") {
      TableRow row;
      std::string g;
      if (!(ls >> g >> row.prime >> row.k)) fail("expected table <group> <p> <k> <ideal>");
      row.group = parse_group(g);
      row.ideal = rest();
      if (row.ideal.size() > 3 && row.ideal.substr(row.ideal.size() - 3) == " P2") {
        row.power = 2;
        row.ideal = detail::trim(row.ideal.substr(0, row.ideal.size() - 3));
      }
      if (row.ideal.empty()) fail("table row without an ideal");
      table.rows.push_back(row);
      current = nullptr;
    } else if (word == "case") {
      CaseBlock block;
      std::string g;
      if (!(ls >> block.id >> g)) fail("expected case <id> <group>");
      block.group = parse_group(g);
      table.cases.push_back(std::move(block));
      current = &table.cases.back();
    } else if (word == "derive") {
      DerivationEdge e;
      std::string g, from, h, labels;
      if (!(ls >> g >> e.prime >> from >> h >> labels) || from != "from" || labels != "labels")
        fail("expected derive <group> <p> from <group> labels <k>...");
      e.group = parse_group(g);
      e.from = parse_group(h);
      for (int k; ls >> k;) e.labels.push_back(k);
      table.edges.push_back(std::move(e));
      current = nullptr;
    } else {
      if (!current) fail("'" + word + "' outside a case block");
      if (word == "products" || word == "nonzero") {
        auto& dst = word == "products" ? current->products : current->nonzero;
        for (std::string s; ls >> s;) dst.push_back(parse_product(s));
      } else if (word == "run") {
        int k = 0;
        Residue p = 0;
        if (!(ls >> k >> p)) fail("expected run <k> <p>");
        current->runs.emplace_back(k, p);
      } else if (word == "ideal") {
        current->ideals.push_back(rest());
      } else if (word == "supplement") {
        current->supplements.push_back(rest());
      } else if (word == "value") {
        int k = 0;
        Residue p = 0;
        if (!(ls >> k >> p)) fail("expected value <k> <p> <a>*<b>=<n>...");
        for (std::string s; ls >> s;) {
          auto eq = s.find('=');
          if (eq == std::string::npos) fail("expected <a>*<b>=<n>");
          current->values.push_back({k, p, parse_product(s.substr(0, eq)), std::stoll(s.substr(eq + 1))});
        }
      } else if (word == "external") {
        current->external = true;
      } else if (word == "addendum") {
        current->addendum = true;
      } else if (word == "followup") {
        if (rest() != "p2") fail("unknown follow-up");
        current->followup_p2 = true;
      } else {
        fail("unknown keyword '" + word + "'");
      }
    }
  }
  return table;
}

inline const CaseTable& case_table() {
  static const CaseTable table = parse_case_table(generated::kCasesText);
  return table;
}

inline std::string restriction_label(Group g) {
  switch (g) {
    case Group::E8: return "rho1";
    case Group::E7: return "rho2";
    case Group::E6: return "rho3";
    case Group::F4: return "rho4";
    case Group::G2: return "rhoG2";
  }
  return "?";
}

/// One run of a case: a source generator at one prime.
struct CaseSpec {
  std::string id;
  Group group = Group::E8;
  Residue prime = 0;
  int k = 0;  ///< cohomological degree of the source generator
  std::string restriction;
  std::vector<Product> products;
  std::vector<std::string> ideals;
  /// Extra ideals used only when the listed ones leave a claim undecided.
  std::vector<std::string> supplements;
  std::vector<Product> nonzero;
  std::map<Product, std::int64_t> displayed;
  bool external = false;
  bool followup_p2 = false;
  bool addendum = false;  ///< not part of the transcribed case table

  /// Target degree of P^1 x_k.
  int target_degree() const { return k + 2 * (static_cast<int>(prime) - 1); }

  void validate() const {
    for (const auto& pr : products)
      if (pr.first + pr.second != target_degree())
        throw StructuralError("case " + id + ": " + product_name(pr) + " has degree " +
                              std::to_string(pr.first + pr.second) + ", expected " +
                              std::to_string(target_degree()));
    for (const auto& pr : nonzero)
      if (std::find(products.begin(), products.end(), pr) == products.end())
        throw StructuralError("case " + id + ": claim on a product outside the candidate list");
    if (!external && ideals.empty()) throw StructuralError("case " + id + " has no ideal");
  }
};

inline std::vector<CaseSpec> all_case_specs() {
  std::vector<CaseSpec> out;
  for (const auto& b : case_table().cases) {
    for (const auto& [k, p] : b.runs) {
      CaseSpec cs;
      cs.id = b.id;
      cs.group = b.group;
      cs.prime = p;
      cs.k = k;
      cs.restriction = restriction_label(b.group);
      cs.products = b.products;
      cs.ideals = b.ideals;
      cs.supplements = b.supplements;
      cs.nonzero = b.nonzero;
      cs.external = b.external;
      cs.followup_p2 = b.followup_p2;
      cs.addendum = b.addendum;
      for (const auto& v : b.values)
        if (v.k == k && v.prime == p) cs.displayed[v.product] = v.value;
      cs.validate();
      out.push_back(std::move(cs));
    }
  }
  return out;
}

/// Case runs for one group and prime, ordered by source degree.
inline std::vector<CaseSpec> case_specs(Group g, Residue p) {
  std::vector<CaseSpec> out;
  for (auto& cs : all_case_specs())
    if (cs.group == g && cs.prime == p) out.push_back(std::move(cs));
  std::stable_sort(out.begin(), out.end(), [](const CaseSpec& a, const CaseSpec& b) { return a.k < b.k; });
  return out;
}

inline std::vector<TableRow> table_rows(Group g, Residue p) {
  std::vector<TableRow> out;
  for (const auto& r : case_table().rows)
    if (r.group == g && r.prime == p) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// P^1 tables

namespace detail {

inline Polynomial steenrod_power(const SteenrodContext& st, const Polynomial& f, int power) {
  if (power == 1) return st.p1(f);
  if (power == 2) return st.p2(f);
  throw PreconditionError("only P^1 and P^2 are supported");
}

}  // namespace detail

/// Reason why P^power x_k cannot be read off modulo the ideal, if any: some
/// correction term allowed by the annotation of x_k has P^power outside it.
inline std::optional<std::string> annotation_conflict(const GroupModel& gm, int k,
                                                      const IdealSpec& ideal, int power = 1) {
  const auto& e = gm.entry(k);
  if (!e.xhat) return "x" + std::to_string(k) + " has no known representative";
  if (e.annotation == Annotation::Exact) return std::nullopt;
  const RingPtr& ring = gm.model_ring();
  const unsigned e1 = e.annotation == Annotation::ModP1Squared ? 2 : 1;
  Polynomial base = Polynomial::variable(ring, "p1", e1);
  for (Monomial q : weighted_monomials(ring, k - 4 * static_cast<int>(e1))) {
    Polynomial corr = base.times_monomial(q);
    Polynomial img = gm.restriction()(detail::steenrod_power(gm.steenrod(), corr, power));
    if (!ideal_contains(ideal, img))
      return "x" + std::to_string(k) + " is known " + annotation_name(e.annotation) +
             ", but P^" + std::to_string(power) + "(" + to_string(corr) + ") is not in " +
             ideal.name();
  }
  return std::nullopt;
}

inline Polynomial p1_table(const GroupModel& gm, int k, const IdealSpec& ideal, int power = 1) {
  if (auto why = annotation_conflict(gm, k, ideal, power))
    throw RefusalError(group_name(gm.group()) + " p=" + std::to_string(gm.prime()) + " x" +
                       std::to_string(k) + ": " + *why);
  const Polynomial& x = *gm.entry(k).xhat;
  return normal_form(gm.restriction()(detail::steenrod_power(gm.steenrod(), x, power)), ideal);
}

/// Normal form of P^1 (or P^2) of the restricted x_k modulo the ideal.
inline Polynomial p1_table(Group g, Residue p, int k, std::string_view ideal_expr, int power = 1) {
  if (!is_prime(p) || p <= 5) throw PreconditionError(std::to_string(p) + " is not a prime > 5");
  require_regular(g, p);
  const GroupModel& gm = group_model(g, p);
  return p1_table(gm, k, parse_ideal(gm, ideal_expr), power);
}

// ---------------------------------------------------------------------------
// Coefficient extraction

/// A monomial in the generators x_d, as the multiset of degrees (ascending).
using GenMonomial = std::vector<int>;

inline std::string gen_monomial_name(const GenMonomial& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size();) {
    std::size_t j = i;
    while (j < u.size() && u[j] == u[i]) ++j;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(u[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s.empty() ? "1" : s;
}

inline GenMonomial to_gen_monomial(Product pr) { return {pr.first, pr.second}; }

struct EngineInput {
  const GroupModel* model = nullptr;
  int degree = 0;
  std::vector<GenMonomial> candidates;
  std::vector<const IdealSpec*> ideals;
  std::vector<Polynomial> lhs;  ///< one reduced left-hand side per ideal
  std::map<int, Polynomial> overrides;  ///< generator images valid modulo every ideal
};

struct EngineTerm {
  GenMonomial mono;
  bool candidate = false;
  std::optional<std::size_t> scalar;  ///< shared column of the coefficient
  std::vector<std::size_t> unknown_columns;
  /// For columns spanning an unknown factor: the multiplier monomial.
  std::vector<std::pair<std::size_t, Monomial>> unknown_basis;
  std::vector<bool> present;  ///< nonvanishing modulo ideal i
  std::optional<Residue> value;
  bool certified_nonzero = false;

  bool anywhere() const { return std::find(present.begin(), present.end(), true) != present.end(); }
  bool has_unknown() const { return !unknown_columns.empty(); }
};

struct EngineResult {
  bool consistent = false;
  std::size_t unknowns = 0, equations = 0, rank = 0;
  std::vector<EngineTerm> terms;
  AffineSolution solution;

  const EngineTerm* find(const GenMonomial& u) const {
    for (const auto& t : terms)
      if (t.mono == u) return &t;
    return nullptr;
  }
};

namespace detail {

/// Image of x_d reduced modulo the ideal, when it is determined there.
inline std::optional<Polynomial> image_modulo(const GroupModel& gm, int d, const IdealSpec& ideal,
                                              const std::map<int, Polynomial>& overrides) {
  if (auto it = overrides.find(d); it != overrides.end()) return normal_form(it->second, ideal);
  const auto& e = gm.entry(d);
  if (!e.xhat) return std::nullopt;
  if (e.annotation != Annotation::Exact) {
    unsigned pw = e.annotation == Annotation::ModP1Squared ? 2 : 1;
    if (e.annotation == Annotation::Unknown) return std::nullopt;
    Polynomial p1 = gm.restriction()(Polynomial::variable(gm.model_ring(), "p1", pw));
    if (!ideal_contains(ideal, p1)) return std::nullopt;
  }
  return normal_form(gm.image(d), ideal);
}

inline std::vector<Monomial> standard_monomials(const IdealSpec& ideal, int degree) {
  std::vector<Monomial> out;
  for (Monomial m : weighted_monomials(ideal.ring(), degree)) {
    bool reducible = false;
    for (const auto& g : ideal.basis())
      if (g.leading().mono.divides(m)) {
        reducible = true;
        break;
      }
    if (!reducible) out.push_back(m);
  }
  return out;
}

struct FoundTerm {
  std::optional<Polynomial> known;  ///< column when every factor is known
  std::vector<std::pair<Monomial, Polynomial>> spanning;  ///< otherwise
};

// All generator monomials of the degree that survive modulo the ideal.
inline std::map<GenMonomial, FoundTerm> enumerate_terms(const GroupModel& gm, int degree,
                                                        const IdealSpec& ideal,
                                                        const std::map<int, Polynomial>& overrides) {
  std::vector<int> gens = gm.generator_degrees();
  std::vector<std::optional<Polynomial>> images;
  for (int d : gens) images.push_back(image_modulo(gm, d, ideal, overrides));
  std::map<GenMonomial, FoundTerm> out;
  GenMonomial cur;
  auto record = [&](const Polynomial& k, int unknown_degree) {
    FoundTerm ft;
    if (unknown_degree == 0) {
      ft.known = k;
    } else {
      for (Monomial m : standard_monomials(ideal, unknown_degree)) {
        Polynomial col = normal_form(k.times_monomial(m), ideal);
        if (!col.is_zero()) ft.spanning.emplace_back(m, std::move(col));
      }
      if (ft.spanning.empty()) return;
    }
    out.emplace(cur, std::move(ft));
  };
  std::function<void(std::size_t, int, const Polynomial&, int)> rec =
      [&](std::size_t pos, int left, const Polynomial& k, int unknown) {
        if (left == 0) {
          if (!cur.empty()) record(k, unknown);
          return;
        }
        if (pos == gens.size()) return;
        rec(pos + 1, left, k, unknown);
        const int d = gens[pos];
        Polynomial kk = k;
        int uu = unknown;
        std::size_t pushed = 0;
        for (int e = 1; e * d <= left; ++e) {
          cur.push_back(d);
          ++pushed;
          if (images[pos]) {
            kk = normal_form(kk * *images[pos], ideal);
            if (kk.is_zero()) break;
          } else {
            uu += d;
          }
          rec(pos + 1, left - e * d, kk, uu);
        }
        cur.resize(cur.size() - pushed);
      };
  rec(0, degree, Polynomial::constant(ideal.ring(), 1), 0);
  return out;
}

inline bool consistent_without(const FpMatrix& a, const std::vector<Residue>& b,
                               const std::set<std::size_t>& drop) {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!drop.count(c)) keep.push_back(c);
  FpMatrix m(a.rows(), keep.size(), a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) m.at(r, c) = a.at(r, keep[c]);
  return solve_fp(LinearSystem(std::move(m), b)).consistent;
}

}  // namespace detail

/// Solves lhs_i = sum_u c_u image_i(u) jointly over all ideals i, where u
/// runs over generator monomials of the given degree.  A coefficient is
/// certified nonzero when the system becomes inconsistent without it.
inline EngineResult run_engine(const EngineInput& in) {
  if (!in.model) throw PreconditionError("run_engine: no model");
  if (in.ideals.size() != in.lhs.size()) throw StructuralError("run_engine: one lhs per ideal");
  const GroupModel& gm = *in.model;
  const Residue p = gm.prime();
  const std::size_t n = in.ideals.size();

  std::vector<std::map<GenMonomial, detail::FoundTerm>> found;
  for (const auto* ideal : in.ideals)
    found.push_back(detail::enumerate_terms(gm, in.degree, *ideal, in.overrides));

  // Term order: candidates as given, then the rest lexicographically.
  std::vector<GenMonomial> order = in.candidates;
  std::set<GenMonomial> others;
  for (const auto& f : found)
    for (const auto& [u, _] : f)
      if (std::find(order.begin(), order.end(), u) == order.end()) others.insert(u);
  order.insert(order.end(), others.begin(), others.end());

  EngineResult res;
  // column data: per column, per ideal, polynomial (or none)
  std::vector<std::vector<const Polynomial*>> columns;
  for (const auto& u : order) {
    EngineTerm t;
    t.mono = u;
    t.candidate = std::find(in.candidates.begin(), in.candidates.end(), u) != in.candidates.end();
    t.present.assign(n, false);
    bool any_known = false;
    for (std::size_t i = 0; i < n; ++i) {
      auto it = found[i].find(u);
      if (it == found[i].end()) continue;
      t.present[i] = true;
      if (it->second.known) any_known = true;
    }
    if (any_known) {
      t.scalar = columns.size();
      std::vector<const Polynomial*> col(n, nullptr);
      for (std::size_t i = 0; i < n; ++i) {
        auto it = found[i].find(u);
        if (it != found[i].end() && it->second.known) col[i] = &*it->second.known;
      }
      columns.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto it = found[i].find(u);
      if (it == found[i].end() || it->second.known) continue;
      for (const auto& [m, poly] : it->second.spanning) {
        std::vector<const Polynomial*> col(n, nullptr);
        col[i] = &poly;
        t.unknown_columns.push_back(columns.size());
        t.unknown_basis.emplace_back(columns.size(), m);
        columns.push_back(std::move(col));
      }
    }
    res.terms.push_back(std::move(t));
  }

  // Rows: (ideal, monomial) pairs.
  std::vector<std::map<Monomial, std::size_t, detail::OrderDesc>> rows;
  std::size_t nrows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    rows.emplace_back(detail::OrderDesc{in.ideals[i]->ring().get()});
    auto add = [&](const Polynomial& f) {
      for (const auto& term : f.terms()) rows[i].emplace(term.mono, 0);
    };
    add(in.lhs[i]);
    for (const auto& col : columns)
      if (col[i]) add(*col[i]);
    for (auto& [m, idx] : rows[i]) idx = nrows++;
  }
  FpMatrix a(nrows, columns.size(), p);
  std::vector<Residue> b(nrows, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& term : in.lhs[i].terms()) b[rows[i].at(term.mono)] = term.coeff;
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c][i])
        for (const auto& term : columns[c][i]->terms()) a.at(rows[i].at(term.mono), c) = term.coeff;
  }
  res.unknowns = columns.size();
  res.equations = nrows;
  res.solution = solve_fp(LinearSystem(a, b));
  res.consistent = res.solution.consistent;
  res.rank = res.solution.rank;
  if (!res.consistent) return res;
  for (auto& t : res.terms) {
    if (t.scalar && res.solution.determined(*t.scalar)) t.value = res.solution.particular[*t.scalar];
    std::set<std::size_t> drop(t.unknown_columns.begin(), t.unknown_columns.end());
    if (t.scalar) drop.insert(*t.scalar);
    if (!drop.empty()) t.certified_nonzero = !detail::consistent_without(a, b, drop);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cases

enum class LambdaStatus { CertifiedNonzero, DeterminedZero, Undetermined, VanishesHere, External };

inline std::string lambda_status_name(LambdaStatus s) {
  switch (s) {
    case LambdaStatus::CertifiedNonzero: return "nonzero";
    case LambdaStatus::DeterminedZero: return "zero";
    case LambdaStatus::Undetermined: return "undetermined";
    case LambdaStatus::VanishesHere: return "undetermined here";
    case LambdaStatus::External: return "external";
  }
  return "?";
}

struct CandidateOutcome {
  Product product;
  LambdaStatus status = LambdaStatus::Undetermined;
  std::optional<Residue> value;
  bool involves_unknown = false;
  std::optional<std::int64_t> displayed;
  /// Status under the case's own ideals, when supplements changed it.
  std::optional<LambdaStatus> listed_status;
};

struct IdealRun {
  std::string expression;
  std::optional<Polynomial> lhs;
  std::optional<std::string> refusal;
  bool supplementary = false;
};

/// The x_60 follow-up: x_60 modulo J from P^1 x_48 (with mu = 1), then
/// lambda + 1 from the Adem relation 2P^2 = P^1 P^1 applied to x_48.
struct FollowupResult {
  std::string ideal;
  std::optional<Polynomial> x60_computed;
  std::optional<Polynomial> x60_displayed;
  std::optional<std::pair<Residue, Residue>> alpha_beta;
  std::pair<Residue, Residue> alpha_beta_displayed{0, 0};
  std::optional<Polynomial> p1_x48;
  std::optional<Polynomial> p1p1_x48;
  std::optional<Residue> lambda_plus_one;            ///< from x60_computed
  std::optional<Residue> lambda_plus_one_displayed;  ///< from the displayed datum
};

struct Discrepancy {
  std::string kind;  ///< refused | inconsistent | not-certified | degenerate | value
  std::string message;
};

struct CaseResult {
  CaseSpec spec;
  std::vector<IdealRun> ideals;
  bool consistent = true;
  std::size_t unknowns = 0, equations = 0, rank = 0;
  std::vector<CandidateOutcome> candidates;
  std::optional<FollowupResult> followup;
  std::vector<Discrepancy> discrepancies;

  bool ok() const { return discrepancies.empty(); }

  const CandidateOutcome* find(Product pr) const {
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
    for (const auto& c : candidates)
      if (c.product == pr) return &c;
    return nullptr;
  }
};

namespace detail {

inline CandidateOutcome outcome_from(const EngineResult& er, Product pr) {
  CandidateOutcome o;
  o.product = pr;
  const EngineTerm* t = er.find(to_gen_monomial(pr));
  if (!t || !t->anywhere()) {
    o.status = LambdaStatus::VanishesHere;
    return o;
  }
  o.involves_unknown = t->has_unknown();
  if (!er.consistent) return o;
  o.value = t->value;
  if (t->certified_nonzero) o.status = LambdaStatus::CertifiedNonzero;
  else if (t->value && *t->value == 0) o.status = LambdaStatus::DeterminedZero;
  else o.status = LambdaStatus::Undetermined;
  return o;
}

inline void check_claims(CaseResult& r) {
  const Residue p = r.spec.prime;
  for (const auto& pr : r.spec.nonzero) {
    const CandidateOutcome* o = r.find(pr);
    if (!o || o->status != LambdaStatus::CertifiedNonzero)
      r.discrepancies.push_back(
          {"not-certified", product_name(pr) + ": coefficient is " +
                                lambda_status_name(o ? o->status : LambdaStatus::VanishesHere) +
                                ", expected nonzero"});
  }
  for (auto& o : r.candidates) {
    auto it = r.spec.displayed.find(o.product);
    if (it == r.spec.displayed.end()) continue;
    o.displayed = it->second;
    Residue want = fp_reduce(it->second, p);
    if (!o.value)
      r.discrepancies.push_back({"not-certified", product_name(o.product) +
                                                      ": coefficient not determined, displayed " +
                                                      std::to_string(it->second)});
    else if (*o.value != want)
      r.discrepancies.push_back({"value", product_name(o.product) + ": computed " +
                                              std::to_string(*o.value) + ", displayed " +
                                              std::to_string(it->second) + " (= " +
                                              std::to_string(want) + " mod " +
                                              std::to_string(p) + ")"});
  }
}

inline Polynomial restricted_power(const GroupModel& gm, int k, int power) {
  const Polynomial& x = *gm.entry(k).xhat;
  const SteenrodContext& st = gm.steenrod();
  Polynomial y = st.p1(x);
  if (power == 2) y = st.p1(y);
  return gm.restriction()(y);
}

inline void run_followup(const GroupModel& gm, CaseResult& r) {
  const Residue p = gm.prime();
  if (r.spec.ideals.size() != 1) throw StructuralError("follow-up expects a single ideal");
  IdealSpec J = parse_ideal(gm, r.spec.ideals.front());
  FollowupResult f;
  f.ideal = J.name();
  IdealRun run{J.name(), std::nullopt, std::nullopt};

  const PartialDatum* datum = nullptr;
  for (const auto& d : catalog_source().partials)
    if (d.group == gm.group() && d.k == r.spec.k && d.prime == p) datum = &d;
  if (!datum) throw StructuralError("follow-up without a partial datum for x" + std::to_string(r.spec.k));
  if (detail::trim(datum->ideal) != J.name())
    throw StructuralError("partial datum ideal '" + detail::trim(datum->ideal) +
                          "' differs from the case ideal '" + J.name() + "'");
  f.x60_displayed = normal_form(parse_polynomial(J.ring(), datum->polynomial, gm.resolver()), J);
  const RingPtr& ring = J.ring();
  Polynomial m1 = parse_polynomial(ring, "p5^3");
  Polynomial m2 = parse_polynomial(ring, "p7*p5*p3");
  f.alpha_beta_displayed = {f.x60_displayed->coefficient(m1.leading().mono),
                            f.x60_displayed->coefficient(m2.leading().mono)};

  const int src = 48, tgt = r.spec.k;
  Product cand{tgt, tgt};
  CandidateOutcome out;
  out.product = cand;
  out.involves_unknown = true;

  for (int power : {1, 2}) {
    if (auto why = annotation_conflict(gm, src, J, power)) {
      run.refusal = *why;
      r.discrepancies.push_back({"refused", *why});
    }
  }
  if (run.refusal) {
    r.ideals.push_back(run);
    r.candidates.push_back(out);
    r.followup = f;
    return;
  }

  // Step 1: P^1 x_48 = mu x_48 x_60 + ..., mu = 1.
  f.p1_x48 = normal_form(restricted_power(gm, src, 1), J);
  run.lhs = f.p1_x48;
  EngineInput a;
  a.model = &gm;
  a.degree = src + 2 * (static_cast<int>(p) - 1);
  a.candidates = {{src, tgt}};
  a.ideals = {&J};
  a.lhs = {*f.p1_x48};
  EngineResult ea = run_engine(a);
  r.consistent = ea.consistent;
  r.unknowns = ea.unknowns;
  r.equations = ea.equations;
  r.rank = ea.rank;
  if (const EngineTerm* t = ea.find({src, tgt}); ea.consistent && t && t->has_unknown()) {
    bool determined = true;
    Polynomial x(ring);
    for (const auto& [col, m] : t->unknown_basis) {
      if (!ea.solution.determined(col)) determined = false;
      else x += Polynomial::monomial(ring, m, ea.solution.particular[col]);
    }
    if (determined) {
      f.x60_computed = x;
      f.alpha_beta = std::make_pair(x.coefficient(m1.leading().mono), x.coefficient(m2.leading().mono));
      if (!(x - Polynomial::monomial(ring, m1.leading().mono, f.alpha_beta->first) -
            Polynomial::monomial(ring, m2.leading().mono, f.alpha_beta->second))
               .is_zero())
        r.discrepancies.push_back({"value", "x60 mod " + J.name() + " has terms outside p5^3, p7*p5*p3"});
    }
  }
  if (!ea.consistent) r.discrepancies.push_back({"inconsistent", "P^1 x48 system is inconsistent"});

  // Step 2: P^1 P^1 x_48 = (lambda + 1) x_48 x_60^2 + ...
  f.p1p1_x48 = normal_form(restricted_power(gm, src, 2), J);
  auto solve_with = [&](const Polynomial& x60) -> std::optional<Residue> {
    EngineInput b;
    b.model = &gm;
    b.degree = src + 4 * (static_cast<int>(p) - 1);
    b.candidates = {{src, tgt, tgt}};
    b.ideals = {&J};
    b.lhs = {*f.p1p1_x48};
    b.overrides = {{tgt, x60}};
    EngineResult eb = run_engine(b);
    const EngineTerm* t = eb.find({src, tgt, tgt});
    if (!eb.consistent || !t) return std::nullopt;
    return t->value;
  };
  f.lambda_plus_one_displayed = solve_with(*f.x60_displayed);
  if (f.x60_computed) f.lambda_plus_one = solve_with(*f.x60_computed);

  std::optional<Residue> lp1 = f.x60_computed ? f.lambda_plus_one : f.lambda_plus_one_displayed;
  if (lp1) out.status = *lp1 == 1 ? LambdaStatus::DeterminedZero : LambdaStatus::CertifiedNonzero;

  if (f.alpha_beta && *f.alpha_beta != f.alpha_beta_displayed)
    r.discrepancies.push_back(
        {"value", "x60 mod " + J.name() + ": computed (alpha, beta) = (" +
                      std::to_string(f.alpha_beta->first) + ", " + std::to_string(f.alpha_beta->second) +
                      "), displayed (" + std::to_string(f.alpha_beta_displayed.first) + ", " +
                      std::to_string(f.alpha_beta_displayed.second) + ")"});
  if (!f.x60_computed)
    r.discrepancies.push_back({"not-certified", "x60 mod " + J.name() + " is not determined by P^1 x48"});
  r.ideals.push_back(run);
  r.candidates.push_back(out);
  r.followup = f;
}

}  // namespace detail

inline CaseResult run_case(const CaseSpec& cs) {
  cs.validate();
  CaseResult r;
  r.spec = cs;
  if (cs.external) {
    for (const auto& pr : cs.products) {
      CandidateOutcome o;
      o.product = pr;
      o.status = LambdaStatus::External;
      r.candidates.push_back(o);
    }
    return r;
  }
  require_regular(cs.group, cs.prime);
  const GroupModel& gm = group_model(cs.group, cs.prime);
  if (cs.followup_p2) {
    detail::run_followup(gm, r);
    detail::check_claims(r);
    return r;
  }

  std::vector<IdealSpec> ideals;
  for (const auto& expr : cs.ideals) ideals.push_back(parse_ideal(gm, expr));
  for (const auto& expr : cs.supplements) ideals.push_back(parse_ideal(gm, expr));
  EngineInput listed, joint;
  listed.model = joint.model = &gm;
  listed.degree = joint.degree = cs.target_degree();
  for (const auto& pr : cs.products) listed.candidates.push_back(to_gen_monomial(pr));
  joint.candidates = listed.candidates;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    const IdealSpec& ideal = ideals[i];
    IdealRun run{ideal.name(), std::nullopt, annotation_conflict(gm, cs.k, ideal, 1),
                 i >= cs.ideals.size()};
    if (run.refusal) {
      r.discrepancies.push_back({"refused", ideal.name() + ": " + *run.refusal});
    } else {
      run.lhs = p1_table(gm, cs.k, ideal);
      EngineInput& dst = run.supplementary ? joint : listed;
      dst.ideals.push_back(&ideal);
      dst.lhs.push_back(*run.lhs);
    }
    r.ideals.push_back(std::move(run));
  }
  auto record = [&](const EngineResult& er) {
    r.consistent = er.consistent;
    r.unknowns = er.unknowns;
    r.equations = er.equations;
    r.rank = er.rank;
    if (!er.consistent)
      r.discrepancies.push_back({"inconsistent", "P^1 x" + std::to_string(cs.k) +
                                                     " is not in the span of the degree-" +
                                                     std::to_string(listed.degree) + " products"});
    r.candidates.clear();
    for (const auto& pr : cs.products) r.candidates.push_back(detail::outcome_from(er, pr));
  };
  if (listed.ideals.empty()) {
    for (const auto& pr : cs.products) r.candidates.push_back({pr, LambdaStatus::Undetermined, {}, false, {}, {}});
  } else {
    record(run_engine(listed));
  }

  // Claims the listed ideals leave open are retried with the supplements.
  std::vector<Product> open;
  for (const auto& pr : cs.nonzero)
    if (const CandidateOutcome* o = r.find(pr); !o || o->status != LambdaStatus::CertifiedNonzero)
      open.push_back(pr);
  if (!open.empty() && !joint.ideals.empty()) {
    std::vector<CandidateOutcome> before = r.candidates;
    joint.ideals.insert(joint.ideals.begin(), listed.ideals.begin(), listed.ideals.end());
    joint.lhs.insert(joint.lhs.begin(), listed.lhs.begin(), listed.lhs.end());
    record(run_engine(joint));
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
      if (before[i].status != r.candidates[i].status) r.candidates[i].listed_status = before[i].status;
      Product pr = r.candidates[i].product;
      if (std::find(open.begin(), open.end(), pr) != open.end() &&
          r.candidates[i].status == LambdaStatus::CertifiedNonzero)
        r.discrepancies.push_back({"degenerate", product_name(pr) + ": " +
                                                     lambda_status_name(before[i].status) +
                                                     " under the listed ideals, nonzero with the "
                                                     "supplementary ideals"});
    }
  }
  detail::check_claims(r);
  return r;
}

/// Memoised run_case keyed by (id, prime, k).
inline const CaseResult& cached_case(const CaseSpec& cs) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, Residue, int>, std::shared_ptr<const CaseResult>> cache;
  auto key = std::make_tuple(cs.id, cs.prime, cs.k);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto r = std::make_shared<const CaseResult>(run_case(cs));
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(key, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// Report

enum class Verdict { NontrivialVerified, NontrivialDerived, NontrivialExternal, TrivialByDegree, Unresolved };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NontrivialVerified: return "nontrivial-verified";
    case Verdict::NontrivialDerived: return "nontrivial-derived";
    case Verdict::NontrivialExternal: return "nontrivial-external";
    case Verdict::TrivialByDegree: return "trivial-by-degree";
    case Verdict::Unresolved: return "unresolved";
  }
  return "?";
}

inline bool is_nontrivial(Verdict v) {
  return v == Verdict::NontrivialVerified || v == Verdict::NontrivialDerived ||
         v == Verdict::NontrivialExternal;
}

struct PairVerdict {
  int i = 0, j = 0;
  std::optional<int> k;
  Verdict verdict = Verdict::Unresolved;
  std::string provenance;
  std::vector<std::string> supporting;  ///< every applicable justification
  std::optional<Residue> lambda;
};

struct SamelsonReport {
  Group group = Group::E8;
  Residue prime = 0;
  std::vector<PairVerdict> pairs;
  bool discrepancy = false;
  std::vector<std::string> discrepancies;
  std::vector<CaseResult> cases;

  const PairVerdict& pair(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& pv : pairs)
      if (pv.i == i && pv.j == j) return pv;
    throw PreconditionError("no pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }

  std::size_t nontrivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const PairVerdict& pv) { return is_nontrivial(pv.verdict); }));
  }
};

inline const SamelsonReport& report(Group g, Residue p);

namespace detail {

inline SamelsonReport build_report(Group g, Residue p) {
  require_regular(g, p);
  SamelsonReport rep;
  rep.group = g;
  rep.prime = p;

  std::vector<CaseSpec> specs = case_specs(g, p);
  std::vector<std::future<const CaseResult*>> jobs;
  for (const auto& cs : specs)
    jobs.push_back(std::async(std::launch::async, [cs] { return &cached_case(cs); }));
  for (auto& j : jobs) rep.cases.push_back(*j.get());
  for (const auto& c : rep.cases)
    for (const auto& d : c.discrepancies)
      rep.discrepancies.push_back(c.spec.id + " (x" + std::to_string(c.spec.k) + ", p=" +
                                  std::to_string(p) + ") " + d.kind + ": " + d.message);

  auto t = group_types(g);
  std::sort(t.begin(), t.end());
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a; b < t.size(); ++b) {
      PairVerdict pv;
      pv.i = t[a];
      pv.j = t[b];
      pv.k = partner_degree(g, p, pv.i, pv.j);
      if (!pv.k) {
        pv.verdict = Verdict::TrivialByDegree;
        pv.provenance = "no partner degree";
        rep.pairs.push_back(pv);
        continue;
      }
      Product pr{2 * pv.i, 2 * pv.j};
      std::optional<std::string> verified, derived, external;
      for (const auto& c : rep.cases) {
        if (c.spec.k != 2 * *pv.k) continue;
        const CandidateOutcome* o = c.find(pr);
        if (!o) continue;
        std::string where = "case " + c.spec.id + " (x" + std::to_string(c.spec.k) + ", p=" +
                            std::to_string(p) + ")";
        if (o->status == LambdaStatus::CertifiedNonzero) {
          verified = where;
          if (!o->involves_unknown) pv.lambda = o->value;
        } else if (o->status == LambdaStatus::External) {
          external = "HK (" + where + ")";
        }
      }
      for (const auto& e : case_table().edges) {
        if (e.group != g || e.prime != p) continue;
        auto has = [&](int d) { return std::find(e.labels.begin(), e.labels.end(), d) != e.labels.end(); };
        if (!has(2 * pv.i) || !has(2 * pv.j) || !has(2 * *pv.k)) continue;
        const SamelsonReport& up = report(e.from, p);
        const PairVerdict& upv = up.pair(pv.i, pv.j);
        if (is_nontrivial(upv.verdict))
          derived = "derived from " + group_name(e.from) + "@" + std::to_string(p) + " [" +
                    upv.provenance + "]";
      }
      if (!external && pv.i + pv.j == static_cast<int>(p) + 1) external = std::string("HK");
      for (const auto* s : {&verified, &derived, &external})
        if (*s) pv.supporting.push_back(**s);
      if (verified) {
        pv.verdict = Verdict::NontrivialVerified;
        pv.provenance = *verified;
      } else if (derived) {
        pv.verdict = Verdict::NontrivialDerived;
        pv.provenance = *derived;
      } else if (external) {
        pv.verdict = Verdict::NontrivialExternal;
        pv.provenance = *external;
      } else {
        pv.verdict = Verdict::Unresolved;
        pv.provenance = "no certificate";
        rep.discrepancies.push_back("pair (" + std::to_string(pv.i) + ", " + std::to_string(pv.j) +
                                    ") has partner k=" + std::to_string(*pv.k) +
                                    " but no case certifies it");
      }
      rep.pairs.push_back(pv);
    }
  }
  rep.discrepancy = !rep.discrepancies.empty();
  return rep;
}

}  // namespace detail

/// Verdict for every unordered pair of type units of G at p.  Memoised.
inline const SamelsonReport& report(Group g, Residue p) {
  static std::mutex mu;
  static std::map<std::pair<Group, Residue>, std::shared_ptr<const SamelsonReport>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({g, p}); it != cache.end()) return *it->second;
  }
  auto r = std::make_shared<const SamelsonReport>(detail::build_report(g, p));
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(std::make_pair(g, p), std::move(r)).first->second;
}

/// Primes p > 5 at which G has at least one partner triple.
inline std::vector<Residue> partner_primes(Group g) {
  std::vector<Residue> out;
  for (Residue p = 7; p < 200; ++p)
    if (is_prime(p) && is_p_regular(g, p) && !enumerate_partners(g, p).empty()) out.push_back(p);
  return out;
}

}  // namespace samelson

#endif  // SAMELSON_SAMELSON_HPP

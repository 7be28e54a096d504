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

#ifndef SAMELSON_GOLDENS_HPP
#define SAMELSON_GOLDENS_HPP

// Golden files hold published tables as typed, in LaTeX-ish notation.  Rows
// are compared with recomputed values after both sides are pushed through
// normal_form, so a different representative never reads as a mismatch.
//
// Files in a golden directory:
//   pe8.txt pe7.txt pe6.txt pg2.txt   group | p | k | P1|P2 | ideal | polynomial
//   lambda.txt                         kind | case | p | k | item | value
//   errata.txt                         key | typo | from -> to | note
//                                      key | conflict | computed | note
// A typo entry rewrites the transcribed text before comparison.  A conflict
// entry pins the value this code computes where the source disagrees with
// itself; the row passes only if the computed value still equals the pin.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "samelson/samelson.hpp"

namespace samelson {

/// "9p_7^2p_{5}+x_{12}" -> "9*p7^2*p5+x12".
inline std::string latex_to_expr(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '$' || ch == '\\' || ch == '{' || ch == '}' || ch == '_' || ch == ' ' || ch == '\t')
      continue;
    bool letter = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
    if (letter && !out.empty() && out.back() >= '0' && out.back() <= '9') out.push_back('*');
    out.push_back(ch);
  }
  return out;
}

struct GoldenTableRow {
  std::string file;
  int line = 0;
  Group group = Group::E8;
  Residue prime = 0;
  int k = 0;
  int power = 1;
  std::string ideal;       ///< as transcribed
  std::string polynomial;  ///< as transcribed

  std::string key() const {
    return "table " + group_name(group) + " " + std::to_string(prime) + " " + std::to_string(k) +
           " P" + std::to_string(power);
  }
};

struct GoldenLambda {
  std::string file;
  int line = 0;
  std::string kind;  ///< lambda | alphabeta | adem
  std::string case_id;
  Residue prime = 0;
  int k = 0;
  std::string item;
  std::string value;

  std::string key() const {
    return kind + " " + case_id + " " + std::to_string(prime) + " " + std::to_string(k) + " " + item;
  }
};

struct Erratum {
  std::string key;
  std::string kind;  ///< typo | conflict
  std::string from, to;
  std::string computed;
  std::string note;
};

struct GoldenSet {
  std::vector<GoldenTableRow> rows;
  std::vector<GoldenLambda> lambdas;
  std::map<std::string, Erratum> errata;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> f;
  std::size_t start = 0;
  for (;;) {
    auto bar = line.find('|', start);
    f.push_back(trim(std::string_view(line).substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return f;
}

// Calls fn(fields, lineno) for each non-blank, non-comment line.
template <class Fn>
void for_each_record(std::string_view text, const std::string& file, std::size_t nfields, Fn fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto f = split_fields(t);
    if (f.size() != nfields)
      throw ParseError(file + ":" + std::to_string(lineno) + ": expected " + std::to_string(nfields) +
                       " fields, found " + std::to_string(f.size()));
    fn(f, lineno);
  }
}

inline Residue parse_prime_field(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v <= 0) throw ParseError("");
    return static_cast<Residue>(v);
  } catch (const std::exception&) {
    throw ParseError(where + ": bad number '" + s + "'");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline void parse_table_golden(std::string_view text, const std::string& file, GoldenSet& out) {
  detail::for_each_record(text, file, 6, [&](const std::vector<std::string>& f, int lineno) {
    std::string where = file + ":" + std::to_string(lineno);
    GoldenTableRow r;
    r.file = file;
    r.line = lineno;
    r.group = parse_group(f[0]);
    r.prime = detail::parse_prime_field(f[1], where);
    r.k = static_cast<int>(detail::parse_prime_field(f[2], where));
    if (f[3] == "P1") r.power = 1;
    else if (f[3] == "P2") r.power = 2;
    else throw ParseError(where + ": operation must be P1 or P2");
    r.ideal = f[4];
    r.polynomial = f[5];
    out.rows.push_back(std::move(r));
  });
}

inline void parse_lambda_golden(std::string_view text, const std::string& file, GoldenSet& out) {
  detail::for_each_record(text, file, 6, [&](const std::vector<std::string>& f, int lineno) {
    std::string where = file + ":" + std::to_string(lineno);
    GoldenLambda g;
    g.file = file;
    g.line = lineno;
    g.kind = f[0];
    if (g.kind != "lambda" && g.kind != "alphabeta" && g.kind != "adem")
      throw ParseError(where + ": unknown kind '" + g.kind + "'");
    g.case_id = f[1];
    g.prime = detail::parse_prime_field(f[2], where);
    g.k = static_cast<int>(detail::parse_prime_field(f[3], where));
    g.item = f[4];
    g.value = f[5];
    out.lambdas.push_back(std::move(g));
  });
}

inline void parse_errata(std::string_view text, const std::string& file, GoldenSet& out) {
  detail::for_each_record(text, file, 4, [&](const std::vector<std::string>& f, int lineno) {
    std::string where = file + ":" + std::to_string(lineno);
    Erratum e;
    e.key = f[0];
    e.kind = f[1];
    e.note = f[3];
    if (e.kind == "typo") {
      auto arrow = f[2].find("->");
      if (arrow == std::string::npos) throw ParseError(where + ": typo needs 'from -> to'");
      e.from = detail::trim(std::string_view(f[2]).substr(0, arrow));
      e.to = detail::trim(std::string_view(f[2]).substr(arrow + 2));
    } else if (e.kind == "conflict") {
      e.computed = f[2];
    } else {
      throw ParseError(where + ": erratum kind must be typo or conflict");
    }
    if (!out.errata.emplace(e.key, e).second) throw ParseError(where + ": duplicate erratum " + e.key);
  });
}

inline const std::vector<std::string>& golden_table_files() {
  static const std::vector<std::string> kFiles = {"pe8.txt", "pe7.txt", "pe6.txt", "pg2.txt"};
  return kFiles;
}

inline GoldenSet load_goldens(const std::filesystem::path& dir) {
  GoldenSet set;
  for (const auto& f : golden_table_files()) parse_table_golden(detail::read_file(dir / f), f, set);
  parse_lambda_golden(detail::read_file(dir / "lambda.txt"), "lambda.txt", set);
  if (std::filesystem::exists(dir / "errata.txt"))
    parse_errata(detail::read_file(dir / "errata.txt"), "errata.txt", set);
  return set;
}

// ---------------------------------------------------------------------------
// Comparison

enum class GoldenStatus { Match, Erratum, Conflict, Mismatch, Error };

inline std::string golden_status_name(GoldenStatus s) {
  switch (s) {
    case GoldenStatus::Match: return "match";
    case GoldenStatus::Erratum: return "match-after-erratum";
    case GoldenStatus::Conflict: return "known-conflict";
    case GoldenStatus::Mismatch: return "MISMATCH";
    case GoldenStatus::Error: return "ERROR";
  }
  return "?";
}

struct GoldenOutcome {
  std::string key;
  std::string where;  ///< file:line
  GoldenStatus status = GoldenStatus::Error;
  bool verbatim_match = false;  ///< the transcription matches with no erratum applied
  std::string computed;
  std::string expected;
  std::string detail;
};

inline std::string table_ideal_expr(const GoldenTableRow& r) { return latex_to_expr(r.ideal); }

/// Compares one table row.  Without errata the transcription is taken as is.
inline GoldenOutcome check_table_row(const GoldenTableRow& r, const std::map<std::string, Erratum>* errata) {
  GoldenOutcome o;
  o.key = r.key();
  o.where = r.file + ":" + std::to_string(r.line);
  try {
    const GroupModel& gm = group_model(r.group, r.prime);
    IdealSpec ideal = parse_ideal(gm, table_ideal_expr(r));
    Polynomial computed = p1_table(gm, r.k, ideal, r.power);
    o.computed = to_string(computed);
    auto reduce_text = [&](const std::string& latex) {
      return normal_form(parse_polynomial(gm.final_ring(), latex_to_expr(latex), gm.resolver()), ideal);
    };
    Polynomial printed = reduce_text(r.polynomial);
    o.expected = to_string(printed);
    o.verbatim_match = normal_form(computed - printed, ideal).is_zero();
    if (o.verbatim_match) {
      o.status = GoldenStatus::Match;
      return o;
    }
    o.detail = "difference " + to_string(normal_form(computed - printed, ideal));
    const Erratum* e = nullptr;
    if (errata)
      if (auto it = errata->find(o.key); it != errata->end()) e = &it->second;
    if (!e) {
      o.status = GoldenStatus::Mismatch;
      return o;
    }
    if (e->kind == "typo") {
      auto pos = r.polynomial.find(e->from);
      if (pos == std::string::npos) {
        o.status = GoldenStatus::Error;
        o.detail = "erratum text '" + e->from + "' not found in the transcription";
        return o;
      }
      std::string fixed = r.polynomial;
      fixed.replace(pos, e->from.size(), e->to);
      Polynomial corrected = reduce_text(fixed);
      o.expected = to_string(corrected);
      bool ok = normal_form(computed - corrected, ideal).is_zero();
      o.status = ok ? GoldenStatus::Erratum : GoldenStatus::Mismatch;
      o.detail = (ok ? "typo: " : "typo does not explain the difference: ") + e->note;
    } else {
      Polynomial pinned = reduce_text(e->computed);
      bool ok = normal_form(computed - pinned, ideal).is_zero();
      o.status = ok ? GoldenStatus::Conflict : GoldenStatus::Mismatch;
      o.detail = (ok ? "conflict: " : "computed value moved off its pin: ") + e->note + " (" + o.detail + ")";
    }
  } catch (const Error& ex) {
    o.status = GoldenStatus::Error;
    o.detail = ex.what();
  }
  return o;
}

namespace detail {

inline std::optional<CaseSpec> find_case(const std::string& id, Residue p, int k) {
  for (auto& cs : all_case_specs())
    if (cs.id == id && cs.prime == p && cs.k == k) return cs;
  return std::nullopt;
}

// "7/21" or "-9" to a residue.
inline Residue residue_of(const std::string& s, Residue p) { return parse_rational(s).to_residue(p); }

inline std::string residue_text(Residue v) { return std::to_string(v); }

// "x28*x48" or "28*48".
inline Product parse_named_product(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != 'x') t.push_back(ch);
  return parse_product(t);
}

}  // namespace detail

/// The engine's value for a lambda golden, as text ("19", "3,19", ...).
inline std::optional<std::string> computed_lambda(const GoldenLambda& g, std::string& why) {
  auto cs = detail::find_case(g.case_id, g.prime, g.k);
  if (!cs) {
    why = "no case run " + g.case_id + " at (" + std::to_string(g.k) + ", " + std::to_string(g.prime) + ")";
    return std::nullopt;
  }
  const CaseResult& r = cached_case(*cs);
  if (g.kind == "lambda") {
    const CandidateOutcome* o = r.find(detail::parse_named_product(g.item));
    if (!o || !o->value) {
      why = g.item + " is " + (o ? lambda_status_name(o->status) : std::string("not a candidate"));
      return std::nullopt;
    }
    return detail::residue_text(*o->value);
  }
  if (!r.followup) {
    why = "case has no follow-up";
    return std::nullopt;
  }
  if (g.kind == "alphabeta") {
    if (!r.followup->alpha_beta) {
      why = "(alpha, beta) undetermined";
      return std::nullopt;
    }
    return std::to_string(r.followup->alpha_beta->first) + "," + std::to_string(r.followup->alpha_beta->second);
  }
  // adem: lambda + 1 with the displayed x60 datum, which is what the source uses
  if (!r.followup->lambda_plus_one_displayed) {
    why = "lambda + 1 undetermined";
    return std::nullopt;
  }
  return detail::residue_text(*r.followup->lambda_plus_one_displayed);
}

/// Canonical residue text of a golden value ("-9" -> "28" at 37, "17,28").
inline std::string canonical_lambda_text(const std::string& value, Residue p) {
  std::string out;
  for (const auto& part : detail::split_top_level(value, ',')) {
    if (!out.empty()) out += ",";
    out += detail::residue_text(detail::residue_of(part, p));
  }
  return out;
}

inline GoldenOutcome check_lambda(const GoldenLambda& g, const std::map<std::string, Erratum>* errata) {
  GoldenOutcome o;
  o.key = g.key();
  o.where = g.file + ":" + std::to_string(g.line);
  try {
    o.expected = canonical_lambda_text(g.value, g.prime);
    std::string why;
    auto got = computed_lambda(g, why);
    if (!got) {
      o.status = GoldenStatus::Mismatch;
      o.detail = why;
      return o;
    }
    o.computed = *got;
    o.verbatim_match = o.computed == o.expected;
    if (o.verbatim_match) {
      o.status = GoldenStatus::Match;
      return o;
    }
    o.detail = "computed " + o.computed + ", transcribed " + o.expected;
    const Erratum* e = nullptr;
    if (errata)
      if (auto it = errata->find(o.key); it != errata->end()) e = &it->second;
    if (!e) {
      o.status = GoldenStatus::Mismatch;
    } else if (e->kind == "conflict") {
      bool ok = canonical_lambda_text(e->computed, g.prime) == o.computed;
      o.status = ok ? GoldenStatus::Conflict : GoldenStatus::Mismatch;
      o.detail = (ok ? "conflict: " : "computed value moved off its pin: ") + e->note + " (" + o.detail + ")";
    } else {
      bool ok = canonical_lambda_text(e->to, g.prime) == o.computed;
      o.status = ok ? GoldenStatus::Erratum : GoldenStatus::Mismatch;
      o.detail = "typo: " + e->note;
    }
  } catch (const Error& ex) {
    o.status = GoldenStatus::Error;
    o.detail = ex.what();
  }
  return o;
}

struct GoldensReport {
  std::vector<GoldenOutcome> outcomes;
  std::vector<std::string> unused_errata;

  std::size_t count(GoldenStatus s) const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                  [s](const GoldenOutcome& o) { return o.status == s; }));
  }
  bool ok() const {
    return count(GoldenStatus::Mismatch) == 0 && count(GoldenStatus::Error) == 0 && unused_errata.empty();
  }
};

/// Recomputes every golden row.  Rows are independent and run in parallel;
/// the outcomes keep file order.
inline GoldensReport check_goldens(const GoldenSet& set, bool apply_errata = true) {
  const auto* errata = apply_errata ? &set.errata : nullptr;
  std::vector<std::future<GoldenOutcome>> jobs;
  for (const auto& r : set.rows)
    jobs.push_back(std::async(std::launch::async, [&r, errata] { return check_table_row(r, errata); }));
  for (const auto& g : set.lambdas)
    jobs.push_back(std::async(std::launch::async, [&g, errata] { return check_lambda(g, errata); }));
  GoldensReport rep;
  for (auto& j : jobs) rep.outcomes.push_back(j.get());
  if (apply_errata) {
    for (const auto& [key, e] : set.errata) {
      bool used = std::any_of(rep.outcomes.begin(), rep.outcomes.end(), [&](const GoldenOutcome& o) {
        return o.key == key && (o.status == GoldenStatus::Erratum || o.status == GoldenStatus::Conflict);
      });
      if (!used) rep.unused_errata.push_back(key);
    }
  }
  return rep;
}

}  // namespace samelson

#endif  // SAMELSON_GOLDENS_HPP

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

#ifndef SAMELSON_CLI_HPP
#define SAMELSON_CLI_HPP

// The samelson command line.  run() takes the arguments after the program
// name and writes to the given streams, so it can be driven from tests.
//
//   verify girard --m M --p P
//   verify steenrod --p P
//   verify phi --p P
//   verify invariants --p P
//   verify normal-form --p P
//   tables --group G --prime P [--ideal EXPR] [--k K] [--format json|text]
//   samelson --group G --prime P [--format json|text] [--cases]
//   goldens check DIR [--verbatim] [--format json|text]

#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "samelson/goldens.hpp"
#include "samelson/json_io.hpp"
#include "samelson/samelson.hpp"
#include "samelson/verify.hpp"

namespace samelson::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  ///< a verification suite or golden comparison failed
  kUsage = 2,
  kUnknownGroup = 3,
  kBadPrime = 4,
  kNotRegular = 5,
  kParse = 6,
  kRefused = 7,
  kInternal = 8,
};

class BadPrimeError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

inline Residue checked_prime(long long p) {
  if (p <= 5 || p > static_cast<long long>(kMaxPrime) || !is_prime(static_cast<Residue>(p)))
    throw BadPrimeError("prime must be a prime in (5, " + std::to_string(kMaxPrime) + "], got " +
                        std::to_string(p));
  return static_cast<Residue>(p);
}

inline bool parse_format_json(const std::string& format) {
  if (format != "json" && format != "text") throw UsageError("--format must be json or text");
  return format == "json";
}

namespace detail {

inline std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

inline void print_suite(std::ostream& out, const SuiteResult& s) {
  out << s.name << " p=" << s.prime << ": " << s.passed() << "/" << s.checks.size() << " passed\n";
  for (const auto& c : s.checks) {
    out << "  " << (c.pass ? "ok   " : "FAIL ") << c.label;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
}

inline std::string candidate_text(const CaseResult& r, const CandidateOutcome& o) {
  std::string s = pad(product_name(o.product), 10) + " ";
  if (o.value && !o.involves_unknown) {
    s += "lambda = " + std::to_string(*o.value);
    if (o.status == LambdaStatus::CertifiedNonzero) s += ", nonzero";
  } else {
    s += lambda_status_name(o.status);
  }
  if (o.displayed) s += " (printed " + std::to_string(*o.displayed) + ")";
  if (o.listed_status) s += " (" + lambda_status_name(*o.listed_status) + " under the listed ideals)";
  if (o.status == LambdaStatus::External) s += " [HK]";
  else if (o.status == LambdaStatus::CertifiedNonzero) s += " [case " + r.spec.id + "]";
  return s;
}

inline void print_case(std::ostream& out, const CaseResult& r) {
  out << "  case " << r.spec.id << ", restriction " << r.spec.restriction;
  if (r.spec.addendum) out << ", addendum";
  if (r.spec.external) out << ", external";
  out << "\n";
  for (const auto& run : r.ideals) {
    out << "    mod " << run.expression << (run.supplementary ? " (supplement)" : "") << ": ";
    if (run.refusal) out << "refused: " << *run.refusal;
    else if (run.lhs) out << "P1 x" << r.spec.k << " = " << to_string(*run.lhs);
    out << "\n";
  }
  if (!r.spec.external)
    out << "    system: " << r.unknowns << " unknowns, " << r.equations << " equations, rank " << r.rank
        << (r.consistent ? "" : ", inconsistent") << "\n";
  for (const auto& o : r.candidates) out << "    " << candidate_text(r, o) << "\n";
  if (r.followup) {
    const auto& f = *r.followup;
    out << "    follow-up mod " << f.ideal << ":\n";
    if (f.x60_computed) out << "      x60 = " << to_string(*f.x60_computed) << "\n";
    if (f.alpha_beta)
      out << "      (alpha, beta) = (" << f.alpha_beta->first << ", " << f.alpha_beta->second << "), printed ("
          << f.alpha_beta_displayed.first << ", " << f.alpha_beta_displayed.second << ")\n";
    if (f.lambda_plus_one) out << "      lambda + 1 = " << *f.lambda_plus_one << "\n";
    if (f.lambda_plus_one_displayed)
      out << "      lambda + 1 = " << *f.lambda_plus_one_displayed << " with the printed x60 datum\n";
  }
  for (const auto& d : r.discrepancies) out << "    discrepancy (" << d.kind << "): " << d.message << "\n";
}

inline TableEntry compute_entry(const GroupModel& gm, int k, const std::string& ideal_expr, int power) {
  TableEntry e;
  e.k = k;
  e.power = power;
  e.ideal = ideal_expr;
  try {
    e.polynomial = p1_table(gm, k, parse_ideal(gm, ideal_expr), power);
  } catch (const RefusalError& ex) {
    e.refusal = ex.what();
  }
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_verify(const std::string& which, int m, long long p, const std::string& format, std::ostream& out) {
  bool json = parse_format_json(format);
  Residue q = checked_prime(p);
  SuiteResult s;
  if (which == "girard") {
    if (m < 1 || m > 8) throw UsageError("--m must be in 1..8");
    s = verify_girard(m, q);
  } else if (which == "steenrod") {
    s = verify_steenrod(q);
  } else if (which == "phi") {
    s = verify_phi(q);
  } else if (which == "invariants") {
    s = verify_invariants(q);
  } else {
    s = verify_normal_form(q);
  }
  if (json) out << suite_to_json(s).dump(2) << "\n";
  else detail::print_suite(out, s);
  return s.ok() ? kOk : kCheckFailed;
}

inline int cmd_tables(const std::string& group, long long prime, const std::string& ideal, int k,
                      const std::string& format, std::ostream& out) {
  bool json = parse_format_json(format);
  Group g = parse_group(group);
  Residue p = checked_prime(prime);
  require_regular(g, p);
  const GroupModel& gm = group_model(g, p);

  std::vector<std::future<TableEntry>> row_jobs;
  std::vector<CaseSpec> specs;
  if (!ideal.empty()) {
    parse_ideal(gm, ideal);  // malformed expressions fail before any work
    for (int d : gm.generator_degrees()) {
      if (k && d != k) continue;
      if (!gm.entry(d).xhat) continue;
      row_jobs.push_back(std::async(std::launch::async, [&gm, d, ideal] { return detail::compute_entry(gm, d, ideal, 1); }));
    }
    if (k && row_jobs.empty()) throw UsageError(group + " has no known generator in degree " + std::to_string(k));
  } else {
    for (const auto& r : table_rows(g, p)) {
      if (k && r.k != k) continue;
      row_jobs.push_back(std::async(std::launch::async, [&gm, r] { return detail::compute_entry(gm, r.k, r.ideal, r.power); }));
    }
    for (auto& cs : case_specs(g, p))
      if (!k || cs.k == k) specs.push_back(std::move(cs));
  }
  std::vector<std::future<const CaseResult*>> case_jobs;
  for (const auto& cs : specs) case_jobs.push_back(std::async(std::launch::async, [cs] { return &cached_case(cs); }));

  std::vector<TableEntry> rows;
  for (auto& j : row_jobs) rows.push_back(j.get());
  std::vector<const CaseResult*> cases;
  for (auto& j : case_jobs) cases.push_back(j.get());

  if (k && !ideal.empty() && rows.size() == 1 && rows[0].refusal) throw RefusalError(*rows[0].refusal);

  std::set<int> degrees;
  for (const auto& r : rows) degrees.insert(r.k);
  for (const auto* c : cases) degrees.insert(c->spec.k);

  std::vector<std::string> derivations;
  for (const auto& e : case_table().edges)
    if (e.group == g && e.prime == p) {
      std::string s = "derived from " + group_name(e.from) + " at p = " + std::to_string(p) + " on degrees";
      for (int d : e.labels) s += " " + std::to_string(d);
      derivations.push_back(s);
    }

  if (json) {
    Json j;
    j["group"] = group_name(g);
    j["prime"] = p;
    if (!ideal.empty()) j["ideal"] = ideal;
    Json entries = Json::array();
    for (int d : degrees) {
      Json ej;
      ej["k"] = d;
      Json tj = Json::array();
      for (const auto& r : rows)
        if (r.k == d) tj.push_back(table_entry_to_json(r));
      ej["tables"] = tj;
      Json cj = Json::array();
      for (const auto* c : cases)
        if (c->spec.k == d) cj.push_back(case_to_json(*c));
      ej["cases"] = cj;
      entries.push_back(ej);
    }
    j["entries"] = entries;
    j["derivations"] = derivations;
    out << j.dump(2) << "\n";
  } else {
    out << group_name(g) << " at p = " << p << "\n";
    for (const auto& s : derivations) out << "  " << s << "\n";
    for (int d : degrees) {
      out << "x" << d << "\n";
      for (const auto& r : rows) {
        if (r.k != d) continue;
        out << "  P" << r.power << " x" << d << " mod " << r.ideal << " = ";
        if (r.polynomial) out << to_string(*r.polynomial) << "\n";
        else out << "refused: " << *r.refusal << "\n";
      }
      for (const auto* c : cases)
        if (c->spec.k == d) detail::print_case(out, *c);
    }
  }
  return kOk;
}

inline int cmd_samelson(const std::string& group, long long prime, const std::string& format, bool with_cases,
                        std::ostream& out) {
  bool json = parse_format_json(format);
  Group g = parse_group(group);
  Residue p = checked_prime(prime);
  const SamelsonReport& rep = report(g, p);
  if (json) {
    out << report_to_json(rep, with_cases).dump(2) << "\n";
    return kOk;
  }
  out << group_name(g) << " at p = " << p << ": " << rep.nontrivial_count() << " nontrivial pairs";
  if (rep.discrepancy) out << ", discrepancy flagged";
  out << "\n";
  for (const auto& pv : rep.pairs) {
    std::string ij = "(" + std::to_string(pv.i) + ", " + std::to_string(pv.j) + ")";
    out << "  " << detail::pad(ij, 10) << detail::pad(pv.k ? "k=" + std::to_string(*pv.k) : "", 6)
        << detail::pad(verdict_name(pv.verdict), 22) << pv.provenance;
    if (pv.lambda) out << ", lambda = " << *pv.lambda;
    out << "\n";
  }
  for (const auto& d : rep.discrepancies) out << "  discrepancy: " << d << "\n";
  if (with_cases)
    for (const auto& c : rep.cases) detail::print_case(out, c);
  return kOk;
}

inline int cmd_goldens(const std::string& dir, bool verbatim, const std::string& format, std::ostream& out) {
  bool json = parse_format_json(format);
  if (!std::filesystem::is_directory(dir)) throw UsageError("not a directory: " + dir);
  GoldenSet set = load_goldens(dir);
  GoldensReport rep = check_goldens(set, !verbatim);
  if (json) {
    Json j;
    j["directory"] = dir;
    j["errata_applied"] = !verbatim;
    Json rows = Json::array();
    for (const auto& o : rep.outcomes) rows.push_back(golden_outcome_to_json(o));
    j["rows"] = rows;
    j["unused_errata"] = rep.unused_errata;
    j["ok"] = rep.ok();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& o : rep.outcomes) {
      out << detail::pad(golden_status_name(o.status), 20) << detail::pad(o.where, 14) << o.key << "\n";
      if (o.status != GoldenStatus::Match) {
        if (!o.detail.empty()) out << "    " << o.detail << "\n";
        if (o.status == GoldenStatus::Mismatch) {
          out << "    computed " << o.computed << "\n";
          out << "    expected " << o.expected << "\n";
        }
      }
    }
    for (const auto& key : rep.unused_errata) out << "unused erratum: " << key << "\n";
    out << rep.outcomes.size() << " rows: " << rep.count(GoldenStatus::Match) << " match, "
        << rep.count(GoldenStatus::Erratum) << " match after erratum, " << rep.count(GoldenStatus::Conflict)
        << " known conflicts, " << rep.count(GoldenStatus::Mismatch) << " mismatches, "
        << rep.count(GoldenStatus::Error) << " errors\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

inline int exit_code_for(const std::exception& ex) {
  if (dynamic_cast<const UsageError*>(&ex)) return kUsage;
  if (dynamic_cast<const UnknownGroupError*>(&ex)) return kUnknownGroup;
  if (dynamic_cast<const BadPrimeError*>(&ex)) return kBadPrime;
  if (dynamic_cast<const NotRegularError*>(&ex)) return kNotRegular;
  if (dynamic_cast<const ParseError*>(&ex)) return kParse;
  if (dynamic_cast<const RefusalError*>(&ex)) return kRefused;
  return kInternal;
}

/// Runs one command line.  Diagnostics are single lines on err.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steenrod operations on exceptional classifying spaces and Samelson products", "samelson"};
  app.require_subcommand(1);

  std::string verify_format = "text", tables_format = "text", samelson_format = "json", goldens_format = "text";
  long long p = 0;
  int m = 0;

  auto* verify = app.add_subcommand("verify", "self-check suites");
  verify->require_subcommand(1);
  std::string which;
  for (const char* name : {"girard", "steenrod", "phi", "invariants", "normal-form"}) {
    auto* sub = verify->add_subcommand(name);
    if (std::string(name) == "girard") sub->add_option("--m", m, "rank of the model ring")->required();
    sub->add_option("--p", p, "prime")->required();
    sub->add_option("--format", verify_format, "json or text");
    sub->callback([&which, name] { which = name; });
  }

  std::string group, ideal;
  int k = 0;
  bool with_cases = false;
  auto* tables = app.add_subcommand("tables", "P^1 tables and case runs");
  tables->add_option("--group", group)->required();
  tables->add_option("--prime", p)->required();
  tables->add_option("--ideal", ideal, "ideal expression; computes every generator modulo it");
  tables->add_option("--k", k, "restrict to one generator degree");
  tables->add_option("--format", tables_format, "json or text");

  auto* sam = app.add_subcommand("samelson", "verdict for every pair of type units");
  sam->add_option("--group", group)->required();
  sam->add_option("--prime", p)->required();
  sam->add_option("--format", samelson_format, "json or text");
  sam->add_flag("--cases", with_cases, "include the case runs");

  std::string dir;
  bool verbatim = false;
  auto* goldens = app.add_subcommand("goldens", "golden-file regression");
  goldens->require_subcommand(1);
  auto* check = goldens->add_subcommand("check", "recompute and compare with the transcriptions");
  check->add_option("dir", dir)->required();
  check->add_flag("--verbatim", verbatim, "compare without applying errata");
  check->add_option("--format", goldens_format, "json or text");

  try {
    // CLI11 consumes the vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    err << "usage error: " << (msg.empty() ? "bad arguments" : msg) << "\n";
    return kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(which, m, p, verify_format, out);
    if (tables->parsed()) return cmd_tables(group, p, ideal, k, tables_format, out);
    if (sam->parsed()) return cmd_samelson(group, p, samelson_format, with_cases, out);
    if (check->parsed()) return cmd_goldens(dir, verbatim, goldens_format, out);
  } catch (const std::exception& ex) {
    std::string msg = ex.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << "\n";
    return exit_code_for(ex);
  }
  err << "usage error: no command\n";
  return kUsage;
}

}  // namespace samelson::cli

#endif  // SAMELSON_CLI_HPP

// Copyright 2026 The permbin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The permbin command line. run() is the whole program minus process
// plumbing, so tests can drive it with string arguments.
//
// Exit codes: 0 success, 1 bad parameters, 2 capacity exceeded, 3 internal
// error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permbin/permbin.hpp"

namespace permbin::cli {

/// What a command produced: either one JSON object or a stream of lines.
struct Output {
  json object;
  bool stream = false;
  std::vector<json> lines;
  std::optional<std::vector<std::string>> csv;  // replaces the generic CSV rendering
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline u64 parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    const u64 v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("cannot read " + what + " from '" + s + "'");
  }
}

inline std::pair<u64, unsigned> require_prime_power(u64 q) {
  const auto pp = prime_power(q);
  if (!pp) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  return *pp;
}

/// F_{q^e}.
inline FieldPtr field_over(u64 q, unsigned e) {
  if (e < 1) throw DomainError("e must be positive");
  const auto [p, m] = require_prime_power(q);
  return make_field(p, m * e);
}

struct ElementFlags {
  std::optional<u64> log;
  bool zero = false;
  std::string vec;
};

inline Element parse_element(const Field& F, const ElementFlags& flags) {
  const int given = (flags.log ? 1 : 0) + (flags.zero ? 1 : 0) + (flags.vec.empty() ? 0 : 1);
  if (given != 1) throw DomainError("give exactly one of --a-log, --a-zero, --a-vec");
  if (flags.zero) return F.zero();
  if (flags.log) {
    if (!F.has_tables()) throw CapacityError(F.name() + " has no log tables; use --a-vec");
    return F.exp(*flags.log % (F.order() - 1));
  }
  std::vector<u64> digits;
  for (const auto& part : split(flags.vec, ',')) digits.push_back(parse_u64(part, "--a-vec coefficient"));
  return F.from_digits(digits);
}

/// "c:e,c:e" with c a coefficient log.
inline Binomial parse_terms(const FieldPtr& F, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw DomainError("a binomial needs exactly two terms 'coeff_log:exp', got '" + text + "'");
  if (!F->has_tables()) throw CapacityError(F->name() + " has no log tables");
  Element c[2];
  u64 e[2];
  for (int k = 0; k < 2; ++k) {
    const auto ce = split(parts[k], ':');
    if (ce.size() != 2) throw DomainError("term '" + parts[k] + "' is not 'coeff_log:exp'");
    c[k] = F->exp(parse_u64(ce[0], "coefficient log") % (F->order() - 1));
    e[k] = parse_u64(ce[1], "exponent");
  }
  return Binomial::make(F, c[0], e[0], c[1], e[1]);
}

inline json poly_json(const Field& F, const UniPoly& a) {
  json terms = json::array();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].value != 0) terms.push_back({{"exp", k}, {"coeff_log", F.log(a[k])}});
  }
  return terms;
}

inline std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s = v.dump();
  if (v.is_structured()) {
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  return s;
}

inline void write_csv_object(std::ostream& os, const json& obj, bool header) {
  std::string head, row;
  for (const auto& [key, value] : obj.items()) {
    head += (head.empty() ? "" : ",") + key;
    row += (row.empty() && head.find(',') == std::string::npos ? "" : ",") + csv_cell(value);
  }
  if (header) os << head << '\n';
  os << row << '\n';
}

inline void render(std::ostream& os, const std::string& format, const json& flags, const Output& output) {
  if (format == "json") {
    if (!output.stream) {
      json doc = output.object;
      doc["flags"] = flags;
      os << doc.dump() << '\n';
    } else {
      os << json{{"flags", flags}}.dump() << '\n';
      for (const auto& line : output.lines) os << line.dump() << '\n';
    }
    return;
  }
  os << "# flags " << flags.dump() << '\n';
  if (format == "text") {
    if (!output.stream) {
      for (const auto& [key, value] : output.object.items()) {
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    } else {
      for (const auto& line : output.lines) os << line.dump() << '\n';
    }
    return;
  }
  if (output.csv) {
    for (const auto& line : *output.csv) os << line << '\n';
  } else if (!output.stream) {
    write_csv_object(os, output.object, true);
  } else {
    for (std::size_t k = 0; k < output.lines.size(); ++k) write_csv_object(os, output.lines[k], k == 0);
  }
}

/// Options that do not change results stay out of the echoed flags.
inline bool echoed(const std::string& name) {
  return name != "out" && name != "workers" && name != "cache" && name != "help" && name != "help-all" && name != "summary-out";
}

inline json echo_flags(const CLI::App& sub) {
  json flags = json::object();
  flags["command"] = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (!echoed(name)) continue;
    if (opt->get_expected_max() == 0) {
      flags[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      std::string joined;
      for (const auto& r : results) joined += (joined.empty() ? "" : ",") + r;
      flags[name] = joined;
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    } else {
      flags[name] = nullptr;
    }
  }
  return flags;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"permbin: permutation binomials of finite fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every command");

  struct {
    std::string format = "json";
    std::string out_path;
    u64 p = 0, q = 0, n = 0, d = 0;
    unsigned m = 0, e = 2;
    detail::ElementFlags a;
    std::string method = "both";
    std::string terms, f_terms, g_terms, from_file;
    std::size_t f_line = 0, g_line = 1;
    bool no_check = false, oracle = false, count_points = false, mu_only = false;
    std::string family = "all";
    std::vector<u64> q_list, d_list;
    u64 n_min = 1;
    std::optional<u64> n_max;
    bool coprime_mode = false, no_diagnostics = false, use_cache = false;
    unsigned workers = 1;
    std::string summary_out;
    std::string result_id;
  } o;

  std::vector<CLI::App*> subs;
  std::map<CLI::App*, std::function<Output()>> handlers;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--out", o.out_path, "write output to this file");
    subs.push_back(sub);
  };
  auto element_flags = [&](CLI::App* sub) {
    sub->add_option("--a-log", o.a.log, "coefficient a as a log base xi");
    sub->add_flag("--a-zero", o.a.zero, "coefficient a = 0");
    sub->add_option("--a-vec", o.a.vec, "coefficient a as comma-separated coordinates");
  };

  // field-info
  auto* field_info = app.add_subcommand("field-info", "describe the deterministic field F_{p^m}");
  field_info->add_option("--p", o.p, "characteristic")->required();
  field_info->add_option("--m", o.m, "extension degree")->required();
  common(field_info);
  handlers[field_info] = [&] {
    const FieldPtr F = make_field(o.p, o.m);
    return Output{{{"field", to_json(*F)}, {"name", F->name()}, {"order", F->order()},
                   {"has_tables", F->has_tables()}, {"hash", field_hash(*F)}}};
  };

  // test-pb
  auto* test_pb = app.add_subcommand("test-pb", "test X^n (X^{d(q-1)} + a) over F_{q^e}");
  test_pb->add_option("--q", o.q)->required();
  test_pb->add_option("--e", o.e)->capture_default_str();
  test_pb->add_option("--n", o.n)->required();
  test_pb->add_option("--d", o.d)->required();
  element_flags(test_pb);
  test_pb->add_option("--method", o.method)->check(CLI::IsMember({"brute", "mu", "both"}))->capture_default_str();
  common(test_pb);
  handlers[test_pb] = [&] {
    const FieldPtr F = detail::field_over(o.q, o.e);
    const PBFamilyParams params{F, o.q, o.e, o.n, o.d, detail::parse_element(*F, o.a)};
    if (auto why = family_violation(params)) throw DomainError("inadmissible parameters: " + *why);
    json r = json::object();
    if (o.method != "mu") r["brute"] = is_permutation(from_family(params));
    if (o.method != "brute") r["mu"] = is_pb_mu_criterion(params);
    return Output{r};
  };

  // nd / gdn / adn
  auto* nd = app.add_subcommand("nd", "N_d: orbit minima of Z_{q-1} under G");
  nd->add_option("--p", o.p)->required();
  nd->add_option("--m", o.m)->required();
  nd->add_option("--d", o.d)->required();
  common(nd);
  handlers[nd] = [&] {
    const FieldPtr F = make_field(o.p, o.m);
    const u64 qm1 = F->order() - 1;
    return Output{{{"q", F->order()}, {"d", o.d}, {"N_d", compute_Nd(qm1, o.d)}, {"orbits", g_orbits(qm1, o.d)}}};
  };

  auto* gdn = app.add_subcommand("gdn", "G_{d,n} inside Z_d^x");
  auto* adn = app.add_subcommand("adn", "E_{d,n}: coefficient representatives as logs");
  for (auto* sub : {gdn, adn}) {
    sub->add_option("--p", o.p)->required();
    sub->add_option("--m", o.m)->required();
    sub->add_option("--d", o.d)->required();
    sub->add_option("--n", o.n)->required();
    common(sub);
  }
  handlers[gdn] = [&] {
    const FieldPtr F = make_field(o.p, o.m);
    return Output{{{"q", F->order()}, {"d", o.d}, {"n", o.n}, {"G_dn", compute_Gdn(*F, o.d, o.n)},
                   {"has_minus_one", gdn_has_minus_one(F->order() - 1, o.d, o.n)}}};
  };
  handlers[adn] = [&] {
    const FieldPtr F = make_field(o.p, o.m);
    return Output{{{"q", F->order()}, {"d", o.d}, {"n", o.n}, {"E_dn", compute_Adn(*F, o.d, o.n)}}};
  };

  // canonical
  auto* canonical = app.add_subcommand("canonical", "canonical form of a PB of F_q");
  canonical->add_option("--q", o.q)->required();
  canonical->add_option("--terms", o.terms, "'coeff_log:exp,coeff_log:exp'")->required();
  canonical->add_flag("--no-check", o.no_check, "skip the PB check");
  common(canonical);
  handlers[canonical] = [&] {
    const FieldPtr F = detail::field_over(o.q, 1);
    const Binomial f = detail::parse_terms(F, o.terms);
    const CanonicalResult r = canonical_form(f, !o.no_check);
    json doc = classification_line(f, r);
    doc["representative"] = to_json(r.representative);
    return Output{doc};
  };

  // classify
  auto* classify = app.add_subcommand("classify", "all PBs of F_q with canonical triples (JSON lines)");
  classify->add_option("--q", o.q)->required();
  common(classify);
  handlers[classify] = [&] {
    const FieldPtr F = detail::field_over(o.q, 1);
    CanonicalTables tables(F);
    Output output;
    output.stream = true;
    std::vector<std::string> csv{"m0,n0,lead_log,trail_log,d,n,a_log"};
    for (const Binomial& f : enumerate_pbs(F)) {
      const CanonicalResult r = canonical_form(f, tables, false);
      output.lines.push_back(classification_line(f, r));
      std::ostringstream row;
      row << f.m0() << ',' << f.n0() << ',' << F->log(f.lead()) << ',' << F->log(f.trail()) << ','
          << r.triple.d << ',' << r.triple.n << ',' << r.triple.a_log;
      csv.push_back(row.str());
    }
    output.csv = csv;
    return output;
  };

  // equiv
  auto* equiv = app.add_subcommand("equiv", "whether two PBs of F_q are equivalent");
  equiv->add_option("--q", o.q);
  equiv->add_option("--f", o.f_terms, "'coeff_log:exp,coeff_log:exp'");
  equiv->add_option("--g", o.g_terms, "'coeff_log:exp,coeff_log:exp'");
  equiv->add_option("--from-file", o.from_file, "classification file (JSON lines)");
  equiv->add_option("--f-line", o.f_line, "record index of f in the file")->capture_default_str();
  equiv->add_option("--g-line", o.g_line, "record index of g in the file")->capture_default_str();
  equiv->add_flag("--oracle", o.oracle, "also search for a witness exhaustively");
  common(equiv);
  handlers[equiv] = [&]() -> Output {
    std::optional<Binomial> f, g;
    if (!o.from_file.empty()) {
      std::ifstream in(o.from_file);
      if (!in) throw DomainError("cannot open '" + o.from_file + "'");
      std::vector<json> records;
      for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DomainError("malformed line in '" + o.from_file + "'");
        if (j.contains("binomial")) records.push_back(j.at("binomial"));
      }
      if (o.f_line >= records.size() || o.g_line >= records.size()) {
        throw DomainError("file holds " + std::to_string(records.size()) + " binomials");
      }
      const FieldPtr F = field_from_json(records[o.f_line].at("field"));
      f = binomial_from_json(records[o.f_line], F);
      g = binomial_from_json(records[o.g_line], F);
    } else {
      if (o.q == 0 || o.f_terms.empty() || o.g_terms.empty()) {
        throw DomainError("give --q, --f and --g, or --from-file");
      }
      const FieldPtr F = detail::field_over(o.q, 1);
      f = detail::parse_terms(F, o.f_terms);
      g = detail::parse_terms(F, o.g_terms);
    }
    CanonicalTables tables(f->field_ptr());
    const auto tf = canonical_form(*f, tables).triple;
    const auto tg = canonical_form(*g, tables).triple;
    json doc = {{"f", to_json(*f)}, {"g", to_json(*g)}, {"triple_f", to_json(tf)}, {"triple_g", to_json(tg)},
                {"equivalent", tf == tg}};
    if (o.oracle) {
      const auto w = equivalent_bruteforce(*f, *g);
      doc["oracle_witness"] = w ? to_json(*w) : json(nullptr);
      doc["oracle_agrees"] = w.has_value() == (tf == tg);
    }
    return Output{doc};
  };

  // curve
  auto* curve = app.add_subcommand("curve", "G, N(G) and point-count diagnostics");
  curve->add_option("--q", o.q)->required();
  curve->add_option("--n", o.n)->required();
  curve->add_option("--d", o.d)->required();
  element_flags(curve);
  curve->add_flag("--count-points", o.count_points, "count all off-diagonal zeros over F_{q^2}");
  curve->add_flag("--mu-only", o.mu_only, "count off-diagonal zeros on mu_{q+1} only");
  common(curve);
  handlers[curve] = [&] {
    const FieldPtr F = detail::field_over(o.q, 2);
    const PBFamilyParams params{F, o.q, 2, o.n, o.d, detail::parse_element(*F, o.a)};
    require_quadratic(params);
    const RationalMap g = build_G(params);
    const bool norm_one = norm_of(params) == F->one();
    json doc = {{"P", detail::poly_json(*F, g.P)}, {"Q", detail::poly_json(*F, g.Q)}, {"degree", g.degree},
                {"norm_is_one", norm_one}, {"delta", ng_degree_bound(o.n, o.d)}};
    if (norm_one) return Output{doc};  // P and Q share a factor
    const BivariatePoly ng = numerator_NG(*F, g);
    doc["N_G"] = to_json(ng, *F);
    doc["observed_degree"] = ng.total_degree();
    doc["primitive_pair_coprime"] = primitivity_check(params);
    doc["hw_lower"] = to_json(hasse_weil_lower(F->order(), ng_degree_bound(o.n, o.d)));
    if (!ng.is_zero()) {
      doc["mu_offdiagonal"] = count_mu_offdiagonal_points(ng, *F, o.q);
      if (o.count_points && !o.mu_only) doc["affine_offdiagonal"] = count_offdiagonal_points(ng, *F);
    }
    return Output{doc};
  };

  // scan
  auto* scan = app.add_subcommand("scan", "nonexistence scans (JSON lines of PBs found plus slice summaries)");
  scan->add_option("--family", o.family)->check(CLI::IsMember({"t19", "t110", "all"}))->capture_default_str();
  scan->add_option("--q", o.q_list, "comma-separated q values")->delimiter(',')->required();
  scan->add_option("--n-min", o.n_min)->capture_default_str();
  scan->add_option("--n-max", o.n_max, "default q^2 - 1");
  scan->add_option("--d", o.d_list, "comma-separated d values (t110)")->delimiter(',');
  scan->add_flag("--coprime-mode", o.coprime_mode, "t110: require gcd(n, d) = 1 instead of d | q + 1");
  scan->add_option("--method", o.method)->check(CLI::IsMember({"brute", "mu", "both"}))->capture_default_str();
  scan->add_flag("--no-diagnostics", o.no_diagnostics, "skip curve diagnostics on PBs found");
  scan->add_option("--workers", o.workers)->capture_default_str();
  scan->add_flag("--cache", o.use_cache, "reuse cached slices");
  scan->add_option("--summary-out", o.summary_out, "also write the summary CSV here");
  common(scan);
  handlers[scan] = [&] {
    std::vector<std::pair<std::string, ScanConfig>> runs;
    auto base = [&](ScanFamily fam, std::vector<u64> qs) {
      ScanConfig c;
      c.family = fam;
      c.q_list = std::move(qs);
      c.n_min = o.n_min;
      c.n_max = o.n_max;
      c.d_list = o.d_list;
      c.coprime_mode = o.coprime_mode;
      c.use_brute = o.method != "mu";
      c.use_criterion = o.method != "brute";
      c.diagnostics = !o.no_diagnostics;
      c.workers = o.workers;
      return c;
    };
    if (o.family == "t19" || o.family == "all") {
      std::vector<u64> even;
      for (u64 q : o.q_list) {
        if (is_power_of_two(q)) even.push_back(q);
      }
      if (o.family == "t19" && even.size() != o.q_list.size()) throw DomainError("t19 needs q = 2^m");
      if (!even.empty()) runs.emplace_back("t19", base(ScanFamily::kT19, even));
    }
    if (o.family == "t110" || o.family == "all") runs.emplace_back("t110", base(ScanFamily::kT110, o.q_list));

    Output output;
    output.stream = true;
    std::vector<std::string> csv{kSummaryCsvHeader};
    const ResultCache cache(ResultCache::default_dir());
    for (const auto& [name, config] : runs) {
      const auto results = o.use_cache ? run_scan_cached(config, cache) : run_scan(config);
      for (const auto& slice : results) {
        for (const auto& rec : slice.records) output.lines.push_back(to_json(rec));
        output.lines.push_back({{"family", name}, {"summary", to_json(slice.summary)}});
        csv.push_back(summary_csv_row(slice.summary));
      }
    }
    if (!o.summary_out.empty()) {
      std::ofstream s(o.summary_out);
      if (!s) throw DomainError("cannot write '" + o.summary_out + "'");
      for (const auto& line : csv) s << line << '\n';
    }
    output.csv = csv;
    return output;
  };

  // verify
  auto* verify = app.add_subcommand("verify", "check a known result against brute force");
  verify->add_option("--result", o.result_id, "R1.1 ... R1.7, T1.9, T1.10")->required();
  verify->add_option("--q", o.q)->required();
  verify->add_option("--e", o.e)->capture_default_str();
  common(verify);
  handlers[verify] = [&]() -> Output {
    const std::string id = normalize_result_id(o.result_id);
    if (id == "T1.9" || id == "T1.10") {
      if (o.e != 2) throw DomainError(id + " is stated for e = 2");
      const auto results = id == "T1.9" ? scan_T19({o.q}, 1, o.q * o.q - 1) : scan_T110({o.q}, 1, std::nullopt, {});
      u64 found = 0, in_condition = 0, violations = 0, tested = 0;
      for (const auto& slice : results) tested += slice.summary.count_tested;
      for (const auto& rec : positives(results)) {
        ++found;
        if (id == "T1.9" || !rec.conditions.empty()) ++in_condition;
        if (rec.violation) ++violations;
      }
      return Output{{{"result", id}, {"q", o.q}, {"e", 2}, {"tested", tested}, {"positives", found},
                     {"in_condition_positives", in_condition}, {"violations", violations}}};
    }
    return Output{to_json(verify_result(id, o.q, o.e))};
  };

  std::vector<std::string> argv_store{"permbin"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : subs) {
    if (sub->parsed()) chosen = sub;
  }
  try {
    const Output output = handlers.at(chosen)();
    const json flags = detail::echo_flags(*chosen);
    if (o.out_path.empty()) {
      detail::render(out, o.format, flags, output);
    } else {
      std::ofstream file(o.out_path);
      if (!file) throw DomainError("cannot write '" + o.out_path + "'");
      detail::render(file, o.format, flags, output);
    }
    return 0;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace permbin::cli

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

// JSON forms of fields, binomials, canonical data, curves and scan output,
// with readers for everything a classification or scan file contains.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permbin/binomial.hpp"
#include "permbin/canonical.hpp"
#include "permbin/curves.hpp"
#include "permbin/field.hpp"
#include "permbin/poly.hpp"
#include "permbin/results.hpp"

namespace permbin {

using json = nlohmann::json;

inline std::vector<u64> to_digits(const Field& F, Element x) { return F.digits(x); }

inline json to_json(const Field& F) {
  return {{"p", F.characteristic()},
          {"m", F.degree()},
          {"modulus", F.modulus()},
          {"xi", F.digits(F.xi())}};
}

/// Rebuilds a field and checks that it matches the stored description.
inline FieldPtr field_from_json(const json& j) {
  try {
    const u64 p = j.at("p").get<u64>();
    const unsigned m = j.at("m").get<unsigned>();
    FieldPtr field = make_field(p, m);
    if (j.contains("modulus") && j.at("modulus").get<std::vector<u64>>() != field->modulus()) {
      throw DomainError("stored modulus differs from the constructed one");
    }
    if (j.contains("xi") && j.at("xi").get<std::vector<u64>>() != field->digits(field->xi())) {
      throw DomainError("stored xi differs from the constructed one");
    }
    return field;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed field description: ") + e.what());
  }
}

/// 64-bit FNV-1a.
inline u64 fnv1a(const std::string& bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string field_hash(const Field& F) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(F).dump())));
  return buf;
}

inline json to_json(const Binomial& f) {
  const Field& F = f.field();
  return {{"field", to_json(F)},
          {"terms",
           json::array({{{"coeff_log", F.log(f.lead())}, {"exp", f.m0()}},
                        {{"coeff_log", F.log(f.trail())}, {"exp", f.n0()}}})}};
}

inline Binomial binomial_from_json(const json& j, const FieldPtr& field) {
  try {
    const auto& terms = j.at("terms");
    if (terms.size() != 2) throw DomainError("a binomial has exactly two terms");
    auto coeff = [&](const json& t) {
      const auto& c = t.at("coeff_log");
      if (!c.is_number_integer()) throw DomainError("coefficient must be a nonzero element given by its log");
      return field->exp(c.get<u64>() % (field->order() - 1));
    };
    return Binomial::make(field, coeff(terms[0]), terms[0].at("exp").get<u64>(), coeff(terms[1]),
                          terms[1].at("exp").get<u64>());
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed binomial: ") + e.what());
  }
}

inline Binomial binomial_from_json(const json& j) { return binomial_from_json(j, field_from_json(j.at("field"))); }

inline json to_json(const CanonicalTriple& t) { return {{"d", t.d}, {"n", t.n}, {"a_log", t.a_log}}; }

inline CanonicalTriple triple_from_json(const json& j) {
  return {j.at("d").get<u64>(), j.at("n").get<u64>(), j.at("a_log").get<u64>()};
}

inline json to_json(const EquivalenceWitness& w) {
  return {{"u_log", w.u_log}, {"v_log", w.v_log}, {"s", w.s}, {"i", w.i}};
}

inline EquivalenceWitness witness_from_json(const json& j) {
  return {j.at("u_log").get<u64>(), j.at("v_log").get<u64>(), j.at("s").get<u64>(), j.at("i").get<unsigned>()};
}

inline json to_json(const TransformStep& step) {
  switch (step.kind) {
    case TransformStep::Kind::kAlpha: return {{"op", "alpha"}, {"u_log", step.log}};
    case TransformStep::Kind::kBeta: return {{"op", "beta"}};
    case TransformStep::Kind::kGamma: return {{"op", "gamma"}, {"v_log", step.log}, {"s", step.s}};
  }
  return {};
}

inline json to_json(const WitnessChain& chain) {
  json out = json::array();
  for (const auto& step : chain) out.push_back(to_json(step));
  return out;
}

inline WitnessChain chain_from_json(const json& j) {
  WitnessChain chain;
  for (const auto& s : j) {
    const std::string op = s.at("op").get<std::string>();
    if (op == "alpha") {
      chain.push_back(TransformStep::alpha(s.at("u_log").get<u64>()));
    } else if (op == "beta") {
      chain.push_back(TransformStep::beta());
    } else if (op == "gamma") {
      chain.push_back(TransformStep::gamma(s.at("v_log").get<u64>(), s.at("s").get<u64>()));
    } else {
      throw DomainError("unknown transform '" + op + "'");
    }
  }
  return chain;
}

/// One line of a classification file.
inline json classification_line(const Binomial& f, const CanonicalResult& r) {
  return {{"binomial", to_json(f)},
          {"triple", to_json(r.triple)},
          {"witness", to_json(collapse(r.chain, f.field()))},
          {"chain", to_json(r.chain)}};
}

inline json to_json(const BivariatePoly& poly, const Field& F) {
  json terms = json::array();
  for (const auto& [key, c] : poly.terms()) {
    terms.push_back({{"i", key.first}, {"j", key.second}, {"coeff_log", F.log(c)}});
  }
  return {{"field", to_json(F)}, {"terms", terms}};
}

inline BivariatePoly bivariate_from_json(const json& j, const Field& F) {
  BivariatePoly out;
  for (const auto& t : j.at("terms")) {
    out.add_term(F, t.at("i").get<u64>(), t.at("j").get<u64>(), F.exp(t.at("coeff_log").get<u64>()));
  }
  return out;
}

inline json to_json(const HasseWeilBound& b) {
  json j = {{"exact", b.exact}, {"positive", b.positive()}};
  if (b.exact) {
    j["value"] = b.exact_value;
  } else {
    j["value"] = static_cast<double>(b.value);
    j["error_bound"] = static_cast<double>(b.error_bound);
  }
  return j;
}

inline json to_json(const CurveDiagnostics& c) {
  json j = {{"delta", c.delta},
            {"observed_degree", c.observed_degree},
            {"hw_lower", to_json(c.hw_lower)},
            {"mu_offdiagonal", c.mu_offdiagonal},
            {"injective_on_mu", c.injective_on_mu}};
  j["affine_count"] = c.affine_count ? json(*c.affine_count) : json(nullptr);
  return j;
}

inline json to_json(const ScanRecord& r) {
  json verdicts = json::object();
  for (const auto& [id, v] : r.predicate_verdicts) verdicts[id] = to_string(v);
  json j = {{"q", r.q},
            {"e", r.e},
            {"n", r.n},
            {"d", r.d},
            {"a_log", r.a_log},
            {"predicate_verdicts", verdicts},
            {"elapsed", r.elapsed},
            {"conditions", r.conditions},
            {"violation", r.violation}};
  if (r.is_pb_brute) j["is_pb_brute"] = *r.is_pb_brute;
  if (r.is_pb_criterion) j["is_pb_criterion"] = *r.is_pb_criterion;
  if (r.diagnostics) j["diagnostics"] = to_json(*r.diagnostics);
  if (r.norm_delta) j["normalization"] = {{"delta", *r.norm_delta}, {"delta_prime", *r.norm_delta_prime}};
  return j;
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "true") return Verdict::kTrue;
  if (s == "false") return Verdict::kFalse;
  if (s == "abstain") return Verdict::kAbstain;
  throw DomainError("unknown verdict '" + s + "'");
}

/// Reads the scalar fields of a record; diagnostics are not reconstructed.
inline ScanRecord scan_record_from_json(const json& j) {
  ScanRecord r;
  r.q = j.at("q").get<u64>();
  r.e = j.at("e").get<unsigned>();
  r.n = j.at("n").get<u64>();
  r.d = j.at("d").get<u64>();
  r.a_log = j.at("a_log").get<u64>();
  if (j.contains("is_pb_brute")) r.is_pb_brute = j["is_pb_brute"].get<bool>();
  if (j.contains("is_pb_criterion")) r.is_pb_criterion = j["is_pb_criterion"].get<bool>();
  for (const auto& [id, v] : j.at("predicate_verdicts").items()) {
    r.predicate_verdicts[id] = verdict_from_string(v.get<std::string>());
  }
  r.elapsed = j.value("elapsed", 0.0);
  r.conditions = j.value("conditions", std::vector<std::string>{});
  r.violation = j.value("violation", false);
  if (j.contains("normalization")) {
    r.norm_delta = j["normalization"].at("delta").get<u64>();
    r.norm_delta_prime = j["normalization"].at("delta_prime").get<u64>();
  }
  return r;
}

inline json to_json(const SliceSummary& s) {
  return {{"q", s.q}, {"e", s.e}, {"n", s.n}, {"d", s.d},
          {"count_pb", s.count_pb}, {"count_tested", s.count_tested}, {"seconds", s.seconds}};
}

inline SliceSummary summary_from_json(const json& j) {
  return {j.at("q").get<u64>(), j.at("e").get<unsigned>(), j.at("n").get<u64>(), j.at("d").get<u64>(),
          j.at("count_pb").get<u64>(), j.at("count_tested").get<u64>(), j.at("seconds").get<double>()};
}

inline const char* kSummaryCsvHeader = "q,e,n,d,count_pb,count_tested,seconds";

inline std::string summary_csv_row(const SliceSummary& s) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.6f", s.seconds);
  std::ostringstream os;
  os << s.q << ',' << s.e << ',' << s.n << ',' << s.d << ',' << s.count_pb << ',' << s.count_tested << ','
     << seconds;
  return os.str();
}

inline json to_json(const VerifyReport& r) {
  json mismatches = json::array();
  for (const auto& m : r.mismatches) {
    mismatches.push_back(
        {{"n", m.n}, {"d", m.d}, {"a_log", m.a_log}, {"verdict", to_string(m.verdict)}, {"brute", m.brute}});
  }
  return {{"result", r.id},       {"q", r.q},
          {"e", r.e},             {"points", r.points},
          {"in_hypothesis", r.in_hypothesis}, {"abstained", r.abstained},
          {"agree", r.agree},     {"mismatch_count", r.mismatches.size()},
          {"mismatches", mismatches}};
}

// ---------------------------------------------------------------------------
// Slice cache

/// Scan slices stored as JSON files under
/// <dir>/<field hash>/<family>-<q>-<n>-<d>-<mode>.json. The directory is
/// PERMBIN_CACHE_DIR if set, otherwise ~/.cache/permbin.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::filesystem::path default_dir() {
    if (const char* env = std::getenv("PERMBIN_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home) {
      return std::filesystem::path(home) / ".cache" / "permbin";
    }
    return std::filesystem::temp_directory_path() / "permbin-cache";
  }

  std::optional<SliceResult> load(const Field& F, const ScanSlice& slice, const ScanConfig& config) const {
    std::ifstream in(path(F, slice, config));
    if (!in) return std::nullopt;
    try {
      const json j = json::parse(in);
      SliceResult out;
      out.summary = summary_from_json(j.at("summary"));
      for (const auto& r : j.at("records")) {
        ScanRecord rec = scan_record_from_json(r);
        out.records.push_back(std::move(rec));
      }
      // Diagnostics are not reconstructed; recompute them from the record.
      if (config.diagnostics) {
        const auto pp = prime_power(slice.q);
        FieldPtr field = make_field(pp->first, pp->second * 2);
        for (auto& rec : out.records) {
          PBFamilyParams params{field, rec.q, 2, rec.n, rec.d, field->exp(rec.a_log)};
          if (rec.is_pb_brute.value_or(false) || rec.is_pb_criterion.value_or(false)) {
            rec.diagnostics = diagnose(params);
          }
        }
      }
      return out;
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are recomputed
    }
  }

  void store(const Field& F, const ScanSlice& slice, const ScanConfig& config, const SliceResult& r) const {
    const auto file = path(F, slice, config);
    std::filesystem::create_directories(file.parent_path());
    json records = json::array();
    for (const auto& rec : r.records) records.push_back(to_json(rec));
    std::ofstream out(file);
    out << json{{"summary", to_json(r.summary)}, {"records", records}}.dump() << '\n';
  }

 private:
  std::filesystem::path path(const Field& F, const ScanSlice& slice, const ScanConfig& config) const {
    std::ostringstream name;
    name << (slice.family == ScanFamily::kT19 ? "t19" : "t110") << '-' << slice.q << '-' << slice.n << '-'
         << slice.d << '-' << (config.coprime_mode ? 'c' : 'd') << (config.use_brute ? 'b' : '-')
         << (config.use_criterion ? 'm' : '-') << ".json";
    return dir_ / field_hash(F) / name.str();
  }

  std::filesystem::path dir_;
};

/// run_scan with per-slice caching.
inline std::vector<SliceResult> run_scan_cached(const ScanConfig& config, const ResultCache& cache) {
  const auto slices = detail::plan_slices(config);
  std::map<u64, FieldPtr> fields;
  for (u64 q : config.q_list) {
    const auto pp = prime_power(q);
    fields.emplace(q, make_field(pp->first, pp->second * 2));
  }
  std::vector<SliceResult> results(slices.size());
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (auto hit = cache.load(*fields.at(slices[k].q), slices[k], config)) {
      results[k] = std::move(*hit);
    } else {
      missing.push_back(k);
    }
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < missing.size(); idx = next++) {
      const std::size_t k = missing[idx];
      results[k] = detail::run_slice(slices[k], fields.at(slices[k].q), config);
    }
  };
  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (std::size_t k : missing) cache.store(*fields.at(slices[k].q), slices[k], config, results[k]);
  return results;
}

}  // namespace permbin

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

// Known PB classification results for f = X^n (X^{d(q-1)} + a) over F_{q^e}
// as predicates, exhaustive agreement sweeps against brute force, and the
// nonexistence scans for d = 3 (q even) and d | q + 1.
//
// A predicate answers true (f is a PB), false (f is not a PB) or abstains
// when its hypothesis does not hold. The structural predicate for d = 1
// answers whether a PB reduces to X^{n q^h} + a X^n.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/binomial.hpp"
#include "permbin/curves.hpp"
#include "permbin/error.hpp"
#include "permbin/field.hpp"

namespace permbin {

enum class Verdict { kTrue, kFalse, kAbstain };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "true";
    case Verdict::kFalse: return "false";
    case Verdict::kAbstain: return "abstain";
  }
  return "abstain";
}

struct PredicateOutcome {
  Verdict verdict = Verdict::kAbstain;
  std::string note;
};

namespace detail {

inline PredicateOutcome abstain(std::string note = {}) { return {Verdict::kAbstain, std::move(note)}; }
inline PredicateOutcome decide(bool is_pb, std::string note = {}) {
  return {is_pb ? Verdict::kTrue : Verdict::kFalse, std::move(note)};
}

inline bool norm_is_one(const PBFamilyParams& f) { return norm_of(f) == f.field->one(); }

/// (2 max{x, y})^4 without overflow; saturates.
inline u64 validity_bound(i64 x, i64 y) {
  const long double m = 2.0L * static_cast<long double>(std::max(x, y));
  const long double b = m * m * m * m;
  return b >= 1.8e19L ? ~u64{0} : static_cast<u64>(b);
}

inline bool is_power_of_two_or_one(u64 g) { return is_power_of_two(g); }

inline bool admissible(const PBFamilyParams& f) { return !family_violation(f).has_value(); }

}  // namespace detail

inline PredicateOutcome predicate_R11(const PBFamilyParams& f) {
  if (f.e != 2 || !detail::admissible(f) || !detail::norm_is_one(f)) return detail::abstain();
  const Field& F = *f.field;
  const u64 q = f.q;
  const bool c1 = gcd(f.n, q - 1) == 1;
  const bool c2 = gcd_signed(static_cast<i64>(f.n) - static_cast<i64>(f.d), q + 1) == 1;
  const bool c3 = F.pow(F.neg(f.a), (q + 1) / gcd(q + 1, f.d)) != F.one();
  return detail::decide(c1 && c2 && c3);
}

inline PredicateOutcome predicate_R12(const PBFamilyParams& f) {
  if (f.e != 2 || f.n != 1 || f.d != 2 || !detail::admissible(f) || detail::norm_is_one(f)) {
    return detail::abstain();
  }
  const Field& F = *f.field;
  if (f.q % 2 == 0) return detail::decide(false);
  return detail::decide(F.pow(F.neg(f.a), (f.q + 1) / 2) == F.from_int(3));
}

/// No explicit size bound is known, so this never asserts.
inline PredicateOutcome predicate_R13(const PBFamilyParams& f) {
  if (f.e != 2 || f.n != 1 || f.d <= 2 || !detail::admissible(f) || detail::norm_is_one(f)) {
    return detail::abstain();
  }
  return detail::abstain("hypothesis holds but \"q large relative to d\" has no explicit bound");
}

inline PredicateOutcome predicate_R14(const PBFamilyParams& f) {
  if (f.e != 2 || f.n != 3 || f.d != 2 || !detail::admissible(f) || detail::norm_is_one(f)) {
    return detail::abstain();
  }
  const Field& F = *f.field;
  if (f.q % 2 == 0) return detail::decide(false);
  if (F.characteristic() == 3) return detail::decide(false, "1/3 is undefined in characteristic 3");
  if (f.q % 3 != 2) return detail::decide(false);
  return detail::decide(F.pow(F.neg(f.a), (f.q + 1) / 2) == F.inv(F.from_int(3)));
}

/// q = 2^{2m} with m >= 1.
inline bool is_even_power_of_two(u64 q) {
  if (!is_power_of_two(q) || q < 4) return false;
  unsigned bits = 0;
  while ((u64{1} << bits) != q) ++bits;
  return bits % 2 == 0;
}

inline PredicateOutcome predicate_R15(const PBFamilyParams& f) {
  if (f.e != 2 || f.d != 3 || !is_even_power_of_two(f.q) || !detail::admissible(f)) {
    return detail::abstain();
  }
  return detail::decide(gcd(f.n, f.q - 1) == 1 && f.n % (f.q + 1) == 3 % (f.q + 1) &&
                        !detail::norm_is_one(f));
}

inline PredicateOutcome predicate_R16(const PBFamilyParams& f) {
  if (f.e != 2 || f.d != 1 || !detail::admissible(f)) return detail::abstain();
  return detail::decide(gcd(f.n, f.q - 1) == 1 && f.n % (f.q + 1) == 1 % (f.q + 1) &&
                        !detail::norm_is_one(f));
}

/// (q, e) pairs for which the d = 1 structure statement is established.
inline bool r17_covered(u64 q, unsigned e) {
  if (e >= 2 && e <= 4) return true;
  return (e == 5 || e == 6) && is_prime(q);
}

/// For a PB with d = 1: whether f = X^{n q^h} + a X^n as functions for some
/// h in [1, e*m). Non-PB input abstains.
inline PredicateOutcome predicate_R17(const PBFamilyParams& f) {
  if (f.e < 2 || f.d != 1 || !detail::admissible(f) || !r17_covered(f.q, f.e)) return detail::abstain();
  const u128 qe = f.field->order();
  if (static_cast<u128>(f.n) >= qe - f.q) return detail::abstain();
  const Binomial g = from_family(f);
  if (!is_permutation(g)) return detail::abstain("not a PB");
  const Field& F = *f.field;
  const u64 qm1 = F.order() - 1;
  const unsigned m = prime_power(f.q)->second;
  const auto table = as_function_table(g);
  for (unsigned h = 1; h < f.e * m; ++h) {
    const u64 exp_h = mulmod(f.n % qm1, powmod(f.q, h, qm1), qm1);
    bool same = true;
    for (u64 i = 0; i < F.order() && same; ++i) {
      const Element x = F.element_at(i);
      same = table[i] == F.add(F.pow(x, exp_h == 0 && i != 0 ? qm1 : exp_h), F.mul(f.a, F.pow(x, f.n)));
    }
    if (same) return detail::decide(true, "h = " + std::to_string(h));
  }
  return detail::decide(false);
}

/// d = 3, q = 2^m: predicts "not a PB" once q >= (2 max{n, 6-n})^4.
inline PredicateOutcome predicate_T19(const PBFamilyParams& f) {
  if (f.e != 2 || f.d != 3 || !is_power_of_two(f.q) || !detail::admissible(f) || detail::norm_is_one(f)) {
    return detail::abstain();
  }
  const i64 n = static_cast<i64>(f.n);
  if (f.q < detail::validity_bound(n, 6 - n)) return detail::abstain("outside q >= (2 max{n, 6-n})^4");
  return detail::decide(false);
}

/// Conditions (i)-(iii) of the d | q+1 nonexistence theorem that hold for
/// (q, n, d), as "i", "ii", "iii".
inline std::vector<std::string> t110_conditions(u64 q, u64 n, u64 d) {
  std::vector<std::string> out;
  const i64 ni = static_cast<i64>(n), di = static_cast<i64>(d);
  if (di - ni > 1 && detail::is_power_of_two_or_one(gcd(d, n + 1))) out.push_back("i");
  if (d + 2 <= n && n < 2 * d && detail::is_power_of_two_or_one(gcd(d, n - 1))) out.push_back("ii");
  if (n >= 2 * d && detail::is_power_of_two_or_one(gcd(d, n - 1)) && gcd(n - d, q - 1) == 1) {
    out.push_back("iii");
  }
  return out;
}

/// 2 <= d | q+1 (or gcd(n, d) = 1 with `coprime_mode`), a^{q+1} != 1 and one
/// of (i)-(iii): predicts "not a PB" once q >= (2 max{n, 2d-n})^4.
inline PredicateOutcome predicate_T110(const PBFamilyParams& f, bool coprime_mode = false) {
  if (f.e != 2 || f.d < 2 || !detail::admissible(f) || detail::norm_is_one(f)) return detail::abstain();
  if (coprime_mode ? gcd(f.n, f.d) != 1 : (f.q + 1) % f.d != 0) return detail::abstain();
  if (t110_conditions(f.q, f.n, f.d).empty()) return detail::abstain();
  const i64 n = static_cast<i64>(f.n), d = static_cast<i64>(f.d);
  if (f.q < detail::validity_bound(n, 2 * d - n)) return detail::abstain("outside q >= (2 max{n, 2d-n})^4");
  return detail::decide(false);
}

struct PredicateEntry {
  std::string id;
  std::function<PredicateOutcome(const PBFamilyParams&)> fn;
};

inline const std::vector<PredicateEntry>& all_predicates() {
  static const std::vector<PredicateEntry> entries = {
      {"R1.1", predicate_R11}, {"R1.2", predicate_R12}, {"R1.3", predicate_R13},
      {"R1.4", predicate_R14}, {"R1.5", predicate_R15}, {"R1.6", predicate_R16},
      {"R1.7", predicate_R17}, {"T1.9", predicate_T19},
      {"T1.10", [](const PBFamilyParams& f) { return predicate_T110(f); }},
  };
  return entries;
}

inline std::string normalize_result_id(std::string id) {
  for (auto& c : id) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& entry : all_predicates()) {
    if (entry.id == id) return id;
  }
  throw DomainError("unknown result id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Agreement sweeps

struct Mismatch {
  u64 n, d, a_log;
  Verdict verdict;
  bool brute;
};

struct VerifyReport {
  std::string id;
  u64 q = 0;
  unsigned e = 2;
  u64 points = 0;         // admissible points visited
  u64 in_hypothesis = 0;  // points with a true/false verdict
  u64 abstained = 0;
  u64 agree = 0;
  std::vector<Mismatch> mismatches;
};

namespace detail {

/// Calls visit(params) for every admissible point of the sweep domain of a
/// result. `field` is F_{q^e}.
template <typename Visit>
void for_each_sweep_point(const std::string& id, const FieldPtr& field, u64 q, unsigned e, Visit visit) {
  const u64 big = field->order();
  std::vector<std::pair<u64, u64>> nd;  // (n, d)
  auto all_n = [&](u64 d) {
    for (u64 n = 1; n < big; ++n) nd.emplace_back(n, d);
  };
  if (id == "R1.1") {
    for (u64 d : divisors(q + 1)) all_n(d);
  } else if (id == "R1.2") {
    nd.emplace_back(1, 2);
  } else if (id == "R1.3") {
    for (u64 d = 3; d <= q + 1; ++d) nd.emplace_back(1, d);
  } else if (id == "R1.4") {
    nd.emplace_back(3, 2);
  } else if (id == "R1.5") {
    all_n(3);
  } else if (id == "R1.6" || id == "R1.7") {
    all_n(1);
  } else {
    throw DomainError(id + " is verified by scanning, not by an agreement sweep");
  }
  for (auto [n, d] : nd) {
    for (u64 a = 1; a < big; ++a) {
      PBFamilyParams params{field, q, e, n, d, field->element_at(a)};
      if (family_violation(params)) continue;
      visit(params);
    }
  }
}

}  // namespace detail

/// Exhaustive predicate-vs-brute-force agreement for one result at (q, e).
inline VerifyReport verify_result(const std::string& raw_id, u64 q, unsigned e) {
  const std::string id = normalize_result_id(raw_id);
  const auto pp = prime_power(q);
  if (!pp) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  if (e < 1) throw DomainError("e must be positive");
  if (id != "R1.7" && e != 2) throw DomainError(id + " is stated for e = 2");
  const FieldPtr field = make_field(pp->first, pp->second * e);
  require_enumerable(*field, kBruteForceCap);
  const auto& entries = all_predicates();
  const auto entry = std::find_if(entries.begin(), entries.end(), [&](const auto& x) { return x.id == id; });

  VerifyReport report{id, q, e};
  detail::for_each_sweep_point(id, field, q, e, [&](const PBFamilyParams& params) {
    ++report.points;
    const PredicateOutcome outcome = entry->fn(params);
    if (outcome.verdict == Verdict::kAbstain) {
      ++report.abstained;
      return;
    }
    ++report.in_hypothesis;
    const bool brute = is_permutation(from_family(params));
    // The d = 1 structure statement only speaks about PBs, which it must
    // confirm; its verdict on a PB is "true" when the structure is found.
    const bool ok = id == "R1.7" ? outcome.verdict == Verdict::kTrue && brute
                                 : (outcome.verdict == Verdict::kTrue) == brute;
    if (ok) {
      ++report.agree;
    } else {
      report.mismatches.push_back({params.n, params.d, field->log(params.a), outcome.verdict, brute});
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// Scans

enum class ScanFamily { kT19, kT110 };

struct ScanRecord {
  u64 q = 0;
  unsigned e = 2;
  u64 n = 0;
  u64 d = 0;
  u64 a_log = 0;
  std::optional<bool> is_pb_brute;
  std::optional<bool> is_pb_criterion;
  std::map<std::string, Verdict> predicate_verdicts;
  std::optional<CurveDiagnostics> diagnostics;
  double elapsed = 0;
  std::vector<std::string> conditions;  // T1.10 conditions that hold
  bool violation = false;               // PB inside a theorem's validity region
  // Remark-mode normalization (n, d) -> (n / delta, d / delta) via X -> X^{delta'}.
  std::optional<u64> norm_delta;
  std::optional<u64> norm_delta_prime;
};

struct SliceSummary {
  u64 q = 0;
  unsigned e = 2;
  u64 n = 0;
  u64 d = 0;
  u64 count_pb = 0;
  u64 count_tested = 0;
  double seconds = 0;
};

struct SliceResult {
  SliceSummary summary;
  std::vector<ScanRecord> records;
};

struct ScanConfig {
  ScanFamily family = ScanFamily::kT19;
  std::vector<u64> q_list;
  u64 n_min = 1;
  std::optional<u64> n_max;  // default q^2 - 1
  std::vector<u64> d_list;   // T1.10; default every divisor >= 2 of q + 1
  bool coprime_mode = false; // T1.10: gcd(n, d) = 1 instead of d | q + 1
  bool use_brute = true;
  bool use_criterion = true;
  bool diagnostics = true;
  unsigned workers = 1;
};

struct ScanSlice {
  ScanFamily family;
  u64 q;
  u64 n;
  u64 d;
};

namespace detail {

inline std::vector<ScanSlice> plan_slices(const ScanConfig& config) {
  std::vector<ScanSlice> slices;
  for (u64 q : config.q_list) {
    if (!prime_power(q)) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
    const u64 big = q * q;
    const u64 n_max = config.n_max.value_or(big - 1);
    if (config.family == ScanFamily::kT19) {
      if (!is_power_of_two(q)) throw DomainError("the d = 3 scan needs q = 2^m, got " + std::to_string(q));
      for (u64 n = config.n_min; n <= n_max; ++n) slices.push_back({config.family, q, n, 3});
    } else {
      std::vector<u64> ds = config.d_list;
      if (ds.empty()) {
        for (u64 d : divisors(q + 1)) {
          if (d >= 2) ds.push_back(d);
        }
      }
      for (u64 d : ds) {
        if (d < 2) throw DomainError("the d | q+1 scan needs d >= 2");
        if (!config.coprime_mode && (q + 1) % d != 0) {
          throw DomainError("d = " + std::to_string(d) + " does not divide q + 1 = " + std::to_string(q + 1));
        }
        for (u64 n = config.n_min; n <= n_max; ++n) slices.push_back({config.family, q, n, d});
      }
    }
  }
  return slices;
}

inline SliceResult run_slice(const ScanSlice& slice, const FieldPtr& field, const ScanConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto slice_start = Clock::now();
  SliceResult out;
  out.summary = {slice.q, 2, slice.n, slice.d, 0, 0, 0};
  const u64 q = slice.q;

  // Remark mode: (n, d) sharing delta = gcd(n, d) is replaced by
  // (n / delta, d / delta) through X -> X^{delta'} when gcd(delta, q^2-1) = 1.
  u64 eff_n = slice.n, eff_d = slice.d;
  std::optional<u64> delta, delta_prime;
  if (slice.family == ScanFamily::kT110 && config.coprime_mode && gcd(slice.n, slice.d) != 1) {
    const u64 g = gcd(slice.n, slice.d);
    const auto inv = invmod(g, q * q - 1);
    if (!inv) {
      out.summary.seconds = std::chrono::duration<double>(Clock::now() - slice_start).count();
      return out;  // not a PB for any a
    }
    delta = g;
    delta_prime = *inv;
    eff_n = slice.n / g;
    eff_d = slice.d / g;
  }
  const std::vector<std::string> conditions =
      slice.family == ScanFamily::kT110 ? t110_conditions(q, eff_n, eff_d) : std::vector<std::string>{};

  for (u64 ai = 1; ai < field->order(); ++ai) {
    PBFamilyParams params{field, q, 2, slice.n, slice.d, field->element_at(ai)};
    if (family_violation(params) || detail::norm_is_one(params)) continue;
    const auto start = Clock::now();
    ++out.summary.count_tested;
    ScanRecord rec;
    rec.q = q;
    rec.n = slice.n;
    rec.d = slice.d;
    rec.a_log = field->has_tables() ? field->log(params.a) : 0;
    if (config.use_brute && field->order() <= kBruteForceCap) rec.is_pb_brute = is_permutation(from_family(params));
    if (config.use_criterion) rec.is_pb_criterion = is_pb_mu_criterion(params);
    const bool is_pb = rec.is_pb_brute.value_or(false) || rec.is_pb_criterion.value_or(false);
    const bool disagree = rec.is_pb_brute && rec.is_pb_criterion && *rec.is_pb_brute != *rec.is_pb_criterion;
    if (!is_pb && !disagree) continue;
    if (is_pb) ++out.summary.count_pb;

    for (const auto& entry : all_predicates()) {
      rec.predicate_verdicts[entry.id] = entry.fn(params).verdict;
    }
    if (slice.family == ScanFamily::kT110 && config.coprime_mode) {
      PBFamilyParams eff = params;
      eff.n = eff_n;
      eff.d = eff_d;
      rec.predicate_verdicts["T1.10"] =
          family_violation(eff) ? Verdict::kAbstain : predicate_T110(eff, true).verdict;
    }
    rec.conditions = conditions;
    const Verdict theorem = slice.family == ScanFamily::kT19 ? rec.predicate_verdicts["T1.9"]
                                                             : rec.predicate_verdicts["T1.10"];
    rec.violation = is_pb && theorem == Verdict::kFalse;
    rec.norm_delta = delta;
    rec.norm_delta_prime = delta_prime;
    if (config.diagnostics && is_pb && !detail::norm_is_one(params)) rec.diagnostics = diagnose(params);
    rec.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    out.records.push_back(std::move(rec));
  }
  out.summary.seconds = std::chrono::duration<double>(Clock::now() - slice_start).count();
  return out;
}

}  // namespace detail

/// Runs a scan, partitioning slices across workers. Results come back in
/// slice order regardless of the worker count.
inline std::vector<SliceResult> run_scan(const ScanConfig& config) {
  const auto slices = detail::plan_slices(config);
  std::map<u64, FieldPtr> fields;
  for (u64 q : config.q_list) {
    const auto pp = prime_power(q);
    fields.emplace(q, make_field(pp->first, pp->second * 2));
  }
  std::vector<SliceResult> results(slices.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < slices.size(); k = next++) {
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
  return results;
}

inline std::vector<SliceResult> scan_T19(const std::vector<u64>& q_list, u64 n_min, u64 n_max,
                                         unsigned workers = 1) {
  ScanConfig config;
  config.family = ScanFamily::kT19;
  config.q_list = q_list;
  config.n_min = n_min;
  config.n_max = n_max;
  config.workers = workers;
  return run_scan(config);
}

inline std::vector<SliceResult> scan_T110(const std::vector<u64>& q_list, u64 n_min, std::optional<u64> n_max,
                                          const std::vector<u64>& d_list, unsigned workers = 1,
                                          bool coprime_mode = false) {
  ScanConfig config;
  config.family = ScanFamily::kT110;
  config.q_list = q_list;
  config.n_min = n_min;
  config.n_max = n_max;
  config.d_list = d_list;
  config.workers = workers;
  config.coprime_mode = coprime_mode;
  return run_scan(config);
}

/// Records of PBs found by a scan.
inline std::vector<ScanRecord> positives(const std::vector<SliceResult>& results) {
  std::vector<ScanRecord> out;
  for (const auto& slice : results) {
    for (const auto& rec : slice.records) {
      if (rec.is_pb_brute.value_or(false) || rec.is_pb_criterion.value_or(false)) out.push_back(rec);
    }
  }
  return out;
}

}  // namespace permbin

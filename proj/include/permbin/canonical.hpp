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

// Canonical forms of permutation binomials under the equivalence generated by
//
//   alpha_u:     f(X) -> u f(X)
//   beta:        f(X) -> f(X)^p
//   gamma_{v,s}: f(X) -> f(v X^s),  gcd(s, q-1) = 1
//
// Every PB of F_q is equivalent to exactly one X^n (X^d + xi^e) with
// d | q-1, n in N_d and e in E_{d,n}. The triple depends on the fixed
// primitive element xi of the field.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/binomial.hpp"
#include "permbin/error.hpp"
#include "permbin/field.hpp"
#include "permbin/residue.hpp"

namespace permbin {

struct CanonicalTriple {
  u64 d = 0;
  u64 n = 0;
  u64 a_log = 0;

  friend auto operator<=>(const CanonicalTriple&, const CanonicalTriple&) = default;
};

/// g = u f(v X^s)^{p^i}, with u = xi^u_log and v = xi^v_log.
struct EquivalenceWitness {
  u64 u_log = 0;
  u64 v_log = 0;
  u64 s = 1;
  unsigned i = 0;

  friend bool operator==(const EquivalenceWitness&, const EquivalenceWitness&) = default;
};

struct TransformStep {
  enum class Kind { kAlpha, kBeta, kGamma };

  Kind kind = Kind::kAlpha;
  u64 log = 0;  // alpha: log u; gamma: log v
  u64 s = 1;    // gamma only

  static TransformStep alpha(u64 u_log) { return {Kind::kAlpha, u_log, 1}; }
  static TransformStep beta() { return {Kind::kBeta, 0, 1}; }
  static TransformStep gamma(u64 v_log, u64 s) { return {Kind::kGamma, v_log, s}; }

  friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

using WitnessChain = std::vector<TransformStep>;

inline Binomial apply_step(const Binomial& f, const TransformStep& step) {
  const Field& F = f.field();
  switch (step.kind) {
    case TransformStep::Kind::kAlpha:
      return transform_alpha(f, F.exp(step.log));
    case TransformStep::Kind::kBeta:
      return transform_beta(f);
    case TransformStep::Kind::kGamma:
      return transform_gamma(f, F.exp(step.log), step.s);
  }
  throw InternalError("unknown transform kind");
}

inline Binomial replay(const WitnessChain& chain, Binomial f) {
  for (const auto& step : chain) f = apply_step(f, step);
  return f;
}

inline Binomial apply_witness(const Binomial& f, const EquivalenceWitness& w) {
  const Field& F = f.field();
  return transform_combined(f, F.exp(w.u_log), F.exp(w.v_log), w.s, w.i);
}

/// Folds a chain into the single witness with the same effect.
inline EquivalenceWitness collapse(const WitnessChain& chain, const Field& field) {
  const u64 qm1 = field.order() - 1;
  const u64 p = field.characteristic();
  EquivalenceWitness w;
  for (const auto& step : chain) {
    switch (step.kind) {
      case TransformStep::Kind::kAlpha:
        w.u_log = (w.u_log + step.log) % qm1;
        break;
      case TransformStep::Kind::kBeta:
        w.u_log = mulmod(w.u_log, p, qm1);
        w.i = (w.i + 1) % field.degree();
        break;
      case TransformStep::Kind::kGamma:
        w.v_log = (w.v_log + mulmod(step.log, w.s, qm1)) % qm1;
        w.s = mulmod(w.s, step.s, qm1);
        if (w.s == 0) w.s = qm1;  // only when q - 1 = 1
        break;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// N_d, G_{d,n}, E_{d,n}

inline std::vector<u64> compute_Nd(u64 qm1, u64 d) {
  std::vector<u64> out;
  for (const auto& block : g_orbits(qm1, d)) out.push_back(block.front());
  return out;
}

inline std::vector<u64> compute_Nd(const Field& field, u64 d) {
  return compute_Nd(field.order() - 1, d);
}

/// Whether G_{d,n} contains -1: d = -2n mod (q-1)/d and gcd(n, q-1) = 1.
inline bool gdn_has_minus_one(u64 qm1, u64 d, u64 n) {
  const u64 step = qm1 / d;
  return (d + 2 * (n % step)) % step == 0 && gcd(n, qm1) == 1;
}

inline void require_in_Nd(const OrbitGroup& group, u64 n) {
  if (n < 1 || n > group.qm1 || orbit_min(group, n) != n) {
    throw DomainError("n = " + std::to_string(n) + " is not in N_d for d = " +
                      std::to_string(group.d));
  }
}

namespace detail {

inline std::vector<u64> gdn_elements(u64 p, u64 d, bool with_minus) {
  if (d == 1) return {1};  // the trivial group on Z_1, written {1}
  std::vector<u64> gens{p % d};
  if (with_minus) gens.push_back(d - 1);
  std::vector<u64> elems{1};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (u64 g : gens) {
      const u64 y = mulmod(elems[k], g, d);
      if (std::find(elems.begin(), elems.end(), y) == elems.end()) elems.push_back(y);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

/// For each residue of Z_d, the least element of its orbit under `group`.
inline std::vector<u64> orbit_minima_mod_d(u64 d, const std::vector<u64>& group) {
  std::vector<u64> rep(d);
  for (u64 r = 0; r < d; ++r) {
    u64 best = r;
    for (u64 g : group) best = std::min(best, mulmod(g, r, d));
    rep[r] = best;
  }
  return rep;
}

}  // namespace detail

inline std::vector<u64> compute_Gdn(const Field& field, u64 d, u64 n) {
  const u64 qm1 = field.order() - 1;
  const OrbitGroup group = orbit_group(qm1, d);
  require_in_Nd(group, n);
  return detail::gdn_elements(field.characteristic(), d, gdn_has_minus_one(qm1, d, n));
}

/// E_{d,n}: the least element of each G_{d,n}-orbit in Z_d, ascending.
inline std::vector<u64> compute_Adn(const Field& field, u64 d, u64 n) {
  const auto group = compute_Gdn(field, d, n);
  auto rep = detail::orbit_minima_mod_d(d, group);
  std::sort(rep.begin(), rep.end());
  rep.erase(std::unique(rep.begin(), rep.end()), rep.end());
  return rep;
}

/// Memoized N_d, G_{d,n} and E_{d,n} for one field. Not thread-safe: give
/// each worker its own instance.
class CanonicalTables {
 public:
  struct DivisorInfo {
    OrbitGroup group;
    std::vector<u64> nd;
  };
  struct CoefficientInfo {
    std::vector<u64> gdn;
    bool has_minus_one = false;
    std::vector<u64> rep;  // residue mod d -> orbit minimum
    std::vector<u64> e_set;
  };

  explicit CanonicalTables(FieldPtr field) : field_(std::move(field)) {}

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  const DivisorInfo& divisor(u64 d) {
    auto it = divisors_.find(d);
    if (it == divisors_.end()) {
      const u64 qm1 = field_->order() - 1;
      DivisorInfo info{orbit_group(qm1, d), compute_Nd(qm1, d)};
      it = divisors_.emplace(d, std::move(info)).first;
    }
    return it->second;
  }

  const CoefficientInfo& coefficients(u64 d, u64 n) {
    auto key = std::pair{d, n};
    auto it = coefficients_.find(key);
    if (it == coefficients_.end()) {
      const u64 qm1 = field_->order() - 1;
      require_in_Nd(divisor(d).group, n);
      CoefficientInfo info;
      info.has_minus_one = gdn_has_minus_one(qm1, d, n);
      info.gdn = detail::gdn_elements(field_->characteristic(), d, info.has_minus_one);
      info.rep = detail::orbit_minima_mod_d(d, info.gdn);
      info.e_set = info.rep;
      std::sort(info.e_set.begin(), info.e_set.end());
      info.e_set.erase(std::unique(info.e_set.begin(), info.e_set.end()), info.e_set.end());
      it = coefficients_.emplace(key, std::move(info)).first;
    }
    return it->second;
  }

 private:
  FieldPtr field_;
  std::map<u64, DivisorInfo> divisors_;
  std::map<std::pair<u64, u64>, CoefficientInfo> coefficients_;
};

/// Whether a triple satisfies d | q-1, n in N_d and a_log in E_{d,n}.
inline bool is_canonical_triple(CanonicalTables& tables, const CanonicalTriple& t) {
  const u64 qm1 = tables.field().order() - 1;
  if (t.d == 0 || qm1 % t.d != 0 || t.d == qm1) return false;
  const auto& nd = tables.divisor(t.d).nd;
  if (!std::binary_search(nd.begin(), nd.end(), t.n)) return false;
  const auto& e_set = tables.coefficients(t.d, t.n).e_set;
  return std::binary_search(e_set.begin(), e_set.end(), t.a_log);
}

/// X^n (X^d + xi^a_log) as a binomial.
inline Binomial canonical_representative(const FieldPtr& field, const CanonicalTriple& t) {
  return Binomial::make(field, field->one(), t.n + t.d, field->exp(t.a_log), t.n);
}

// ---------------------------------------------------------------------------
// Reduction

struct CanonicalResult {
  CanonicalTriple triple;
  WitnessChain chain;
  Binomial representative;
};

namespace detail {

// X^n (lead X^d + trail), tracked alongside the chain while reducing.
struct Factored {
  u64 n;
  u64 d;
  Element lead;
  Element trail;
};

}  // namespace detail

/// Brings a PB to its canonical form X^n (X^d + xi^e) and returns the
/// transformation chain that does it. With `check_pb` off, non-PB input is
/// reduced anyway and the result carries no meaning.
inline CanonicalResult canonical_form(const Binomial& f, CanonicalTables& tables,
                                      bool check_pb = true) {
  const Field& F = f.field();
  if (!F.same_as(tables.field())) throw DomainError("binomial and tables use different fields");
  if (!F.has_tables()) {
    throw CapacityError("canonical forms need discrete logs; " + F.name() + " has no tables");
  }
  if (check_pb && !is_permutation(f)) throw DomainError("binomial is not a permutation of " + F.name());

  const u64 qm1 = F.order() - 1;
  const u64 p = F.characteristic();
  const ResidueRing ring{qm1};
  WitnessChain chain;

  // Step 1: f(X^s) = X^{s n0} (a0 X^d + b0) with d = gcd(m0 - n0, q - 1).
  const u64 diff = f.m0() - f.n0();
  const u64 d = gcd(diff, qm1);
  const u64 step = qm1 / d;
  const u64 r = step == 1 ? 1 : *invmod((diff / d) % step, step);
  const u64 s = coprime_lift(r, qm1, step);
  if (s != 1) chain.push_back(TransformStep::gamma(0, s));
  detail::Factored cur{ring.normalize(static_cast<i64>(mulmod(s, f.n0(), qm1))), d, f.lead(),
                       f.trail()};
  if (ring.normalize(static_cast<i64>(mulmod(s, f.m0(), qm1))) !=
      ring.normalize(static_cast<i64>(cur.n + d))) {
    throw InternalError("step 1 did not produce the gap d");
  }

  // Step 2: move n to the least element of its G-orbit.
  const auto& dinfo = tables.divisor(d);
  const u64 target = orbit_min(dinfo.group, cur.n);
  if (target != cur.n) {
    std::optional<u64> plus_t, minus_t;
    for (const auto& member : dinfo.group.members) {
      const u64 tn = mulmod(member.t, cur.n, qm1);
      if (!plus_t && member.plus && ring.normalize(static_cast<i64>(tn)) == target) {
        plus_t = member.t;
      }
      if (!minus_t && member.minus &&
          ring.normalize(static_cast<i64>(tn) - static_cast<i64>(d)) == target) {
        minus_t = member.t;
      }
    }
    if (plus_t) {
      chain.push_back(TransformStep::gamma(0, *plus_t));
      cur.n = target;
    } else if (minus_t) {
      chain.push_back(TransformStep::gamma(0, *minus_t));
      cur = {target, d, cur.trail, cur.lead};
    } else {
      throw InternalError("orbit minimum not reached by any group member");
    }
  }
  const u64 n = cur.n;

  // Make the X^{n+d} coefficient 1.
  if (cur.lead != F.one()) chain.push_back(TransformStep::alpha(F.log(F.inv(cur.lead))));
  Element c = F.div(cur.trail, cur.lead);

  // Step 3: land the coefficient on E_{d,n}.
  const auto& cinfo = tables.coefficients(d, n);
  const u64 L = F.log(c);
  const u64 e = cinfo.rep[L % d];
  std::optional<unsigned> frob;
  bool use_inverse = false;
  u64 p_i = 1 % d;
  for (unsigned i = 0; i < F.degree(); ++i, p_i = mulmod(p_i, p, d)) {
    const u64 image = mulmod(p_i, L % d, d);
    if (image == e) {
      frob = i;
      break;
    }
    if (cinfo.has_minus_one && (d - image) % d == e) {
      frob = i;
      use_inverse = true;
      break;
    }
  }
  if (!frob) throw InternalError("coefficient orbit does not reach its representative");

  if (use_inverse) {
    // f(X^{1+kd}) = X^n + c X^{n+d} with k n = 1 mod q-1.
    const u64 k = *invmod(n, qm1);
    chain.push_back(TransformStep::gamma(0, 1 + k * d));
    chain.push_back(TransformStep::alpha(F.log(F.inv(c))));
    c = F.inv(c);
  }

  const unsigned i = *frob;
  const u64 pi_mod = powmod(p, i, qm1);
  const u64 c_log = F.log(c);
  const u64 shifted = (mulmod(pi_mod, c_log, qm1) + qm1 - e % qm1) % qm1;
  if (shifted % d != 0) throw InternalError("coefficient landing is not a d-th power shift");
  const Element b = F.exp(shifted / d);
  const Element b1 = F.frobenius(b, F.degree() - i);  // b1^{p^i} = b
  const u64 s3 = *invmod(pi_mod, qm1);
  if (b1 != F.one() || s3 % qm1 != 1 % qm1) chain.push_back(TransformStep::gamma(F.log(b1), s3));
  for (unsigned k = 0; k < i; ++k) chain.push_back(TransformStep::beta());
  const Element scale = F.inv(F.pow(b, n + d));
  if (scale != F.one()) chain.push_back(TransformStep::alpha(F.log(scale)));

  CanonicalTriple triple{d, n, e};
  Binomial rep = canonical_representative(tables.field_ptr(), triple);
  if (!(replay(chain, f) == rep)) throw InternalError("witness chain does not reproduce the canonical form");
  if (!std::binary_search(cinfo.e_set.begin(), cinfo.e_set.end(), e)) {
    throw InternalError("coefficient representative outside E_{d,n}");
  }
  return {triple, std::move(chain), std::move(rep)};
}

inline CanonicalResult canonical_form(const Binomial& f, bool check_pb = true) {
  CanonicalTables tables(f.field_ptr());
  return canonical_form(f, tables, check_pb);
}

/// Equal canonical triples. Both inputs must be PBs of the same field.
inline bool equivalent(const Binomial& f, const Binomial& g, CanonicalTables& tables) {
  if (!f.field().same_as(g.field())) throw DomainError("binomials live in different fields");
  return canonical_form(f, tables).triple == canonical_form(g, tables).triple;
}

inline bool equivalent(const Binomial& f, const Binomial& g) {
  CanonicalTables tables(f.field_ptr());
  return equivalent(f, g, tables);
}

inline constexpr u64 kEquivalenceSearchCap = u64{1} << 12;

/// Exhaustive search for g = u f(v X^s)^{p^i}, trying (i, s, v) in
/// ascending order and solving for u.
inline std::optional<EquivalenceWitness> equivalent_bruteforce(const Binomial& f, const Binomial& g,
                                                               u64 cap = kEquivalenceSearchCap) {
  const Field& F = f.field();
  if (!F.same_as(g.field())) throw DomainError("binomials live in different fields");
  require_enumerable(F, cap);
  if (!F.has_tables()) throw CapacityError(F.name() + " has no tables");
  const u64 qm1 = F.order() - 1;
  for (unsigned i = 0; i < F.degree(); ++i) {
    for (u64 s = 1; s <= qm1; ++s) {
      if (gcd(s, qm1) != 1) continue;
      for (u64 v_log = 0; v_log < qm1; ++v_log) {
        Binomial h = transform_gamma(f, F.exp(v_log), s);
        for (unsigned k = 0; k < i; ++k) h = transform_beta(h);
        if (h.m0() != g.m0() || h.n0() != g.n0()) continue;
        const Element u = F.div(g.lead(), h.lead());
        if (F.mul(u, h.trail()) != g.trail()) continue;
        return EquivalenceWitness{F.log(u), v_log, s, i};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls visit(f) for every binomial of the field, in the order
/// (m0, n0, log a, log b) ascending.
template <typename Visit>
void for_each_binomial(const FieldPtr& field, Visit visit) {
  const u64 qm1 = field->order() - 1;
  for (u64 m0 = 2; m0 < qm1; ++m0) {
    for (u64 n0 = 1; n0 < m0; ++n0) {
      for (u64 a = 0; a < qm1; ++a) {
        for (u64 b = 0; b < qm1; ++b) {
          visit(Binomial::make(field, field->exp(a), m0, field->exp(b), n0));
        }
      }
    }
  }
}

inline std::vector<Binomial> enumerate_pbs(const FieldPtr& field, u64 cap = kBruteForceCap) {
  require_enumerable(*field, cap);
  if (!field->has_tables()) throw CapacityError(field->name() + " has no tables");
  std::vector<Binomial> out;
  for_each_binomial(field, [&](const Binomial& f) {
    if (is_permutation(f)) out.push_back(f);
  });
  return out;
}

}  // namespace permbin

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

// Binomials a X^m0 + b X^n0 over F_Q, viewed as functions F_Q -> F_Q.
//
// Exponents are reduced into {1, ..., Q-2} (an exponent = 0 mod Q-1 is not
// allowed) and stored with m0 > n0, so two binomials are equal as functions
// exactly when their stored forms are equal.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/error.hpp"
#include "permbin/field.hpp"

namespace permbin {

inline constexpr u64 kBruteForceCap = u64{1} << 16;
inline constexpr u64 kCriterionCap = u64{1} << 20;

class Binomial {
 public:
  /// c1 X^e1 + c2 X^e2, normalized. Exponents are taken mod Q-1.
  static Binomial make(FieldPtr field, Element c1, u64 e1, Element c2, u64 e2) {
    const u64 qm1 = field->order() - 1;
    if (field->is_zero(c1) || field->is_zero(c2)) {
      throw DomainError("binomial coefficients must be nonzero");
    }
    if (!field->contains(c1) || !field->contains(c2)) {
      throw DomainError("coefficient does not belong to " + field->name());
    }
    const u64 r1 = e1 % qm1, r2 = e2 % qm1;
    if (r1 == 0 || r2 == 0) throw DomainError("binomial exponent is 0 mod Q-1");
    if (r1 == r2) throw DomainError("binomial exponents are congruent mod Q-1");
    if (r1 > r2) return Binomial(std::move(field), c1, r1, c2, r2);
    return Binomial(std::move(field), c2, r2, c1, r1);
  }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  Element lead() const { return a_; }
  Element trail() const { return b_; }
  u64 m0() const { return m0_; }
  u64 n0() const { return n0_; }

  friend bool operator==(const Binomial& f, const Binomial& g) {
    return f.field_->same_as(*g.field_) && f.a_ == g.a_ && f.m0_ == g.m0_ &&
           f.b_ == g.b_ && f.n0_ == g.n0_;
  }

 private:
  Binomial(FieldPtr field, Element a, u64 m0, Element b, u64 n0)
      : field_(std::move(field)), a_(a), b_(b), m0_(m0), n0_(n0) {}

  FieldPtr field_;
  Element a_, b_;
  u64 m0_, n0_;
};

/// Parameters of X^n (X^{d(q-1)} + a) over F_{q^e}.
struct PBFamilyParams {
  FieldPtr field;  // F_{q^e}
  u64 q = 0;
  unsigned e = 0;
  u64 n = 0;
  u64 d = 0;
  Element a;
};

/// Name of the first failed admissibility condition, or nullopt.
inline std::optional<std::string> family_violation(const PBFamilyParams& params) {
  if (!params.field) return "field missing";
  if (params.q < 2 || params.e < 1) return "q >= 2 and e >= 1 required";
  const u128 big = [&] {
    u128 r = 1;
    for (unsigned k = 0; k < params.e; ++k) r *= params.q;
    return r;
  }();
  if (big != params.field->order()) return "field order is not q^e";
  if (params.n == 0 || params.d == 0) return "n and d must be positive";
  if (params.field->is_zero(params.a)) return "a must be nonzero";
  if (!params.field->contains(params.a)) return "a is not in the field";
  const u64 qm1 = params.field->order() - 1;
  const u64 shift = mulmod(params.d % qm1, (params.q - 1) % qm1, qm1);
  if (params.n % qm1 == 0) return "n = 0 mod q^e - 1";
  if (shift == 0) return "d(q-1) = 0 mod q^e - 1";
  if ((params.n % qm1 + shift) % qm1 == 0) return "n + d(q-1) = 0 mod q^e - 1";
  return std::nullopt;
}

inline Binomial from_family(const PBFamilyParams& params) {
  if (auto why = family_violation(params)) {
    throw DomainError("inadmissible family parameters: " + *why);
  }
  const u64 qm1 = params.field->order() - 1;
  const u64 shift = mulmod(params.d % qm1, (params.q - 1) % qm1, qm1);
  return Binomial::make(params.field, params.field->one(), params.n % qm1 + shift,
                        params.a, params.n);
}

inline Element eval(const Binomial& f, Element x) {
  const Field& F = f.field();
  if (!F.contains(x)) throw DomainError("evaluation point not in " + F.name());
  return F.add(F.mul(f.lead(), F.pow(x, f.m0())), F.mul(f.trail(), F.pow(x, f.n0())));
}

inline void require_enumerable(const Field& field, u64 cap) {
  if (field.order() > cap) {
    throw CapacityError("field of order " + std::to_string(field.order()) +
                        " exceeds the enumeration cap " + std::to_string(cap));
  }
}

/// f(x) for every x in element order.
inline std::vector<Element> as_function_table(const Binomial& f, u64 cap = kBruteForceCap) {
  require_enumerable(f.field(), cap);
  std::vector<Element> table(f.field().order());
  for (u64 i = 0; i < table.size(); ++i) table[i] = eval(f, f.field().element_at(i));
  return table;
}

inline bool is_permutation(const Binomial& f, u64 cap = kBruteForceCap) {
  const Field& F = f.field();
  require_enumerable(F, cap);
  std::vector<char> hit(F.order(), 0);
  for (u64 i = 0; i < F.order(); ++i) {
    const Element y = eval(f, F.element_at(i));
    if (hit[y.value]) return false;
    hit[y.value] = 1;
  }
  return true;
}

/// gcd(n, q-1) = 1 and x -> x^n (x^d + a)^{q-1} permutes mu_{q+1}.
///
/// For d | q+1 a permutation of mu_{q+1} already forces gcd(n, d) = 1, so
/// the test is the same as asking gcd(n, d(q-1)) = 1. For other d that
/// stronger clause rejects genuine PBs and is not applied.
inline bool is_pb_mu_criterion(const PBFamilyParams& params, u64 cap = kCriterionCap) {
  if (params.e != 2) throw DomainError("the mu_{q+1} criterion needs e = 2");
  if (auto why = family_violation(params)) {
    throw DomainError("inadmissible family parameters: " + *why);
  }
  if (params.q > cap) {
    throw CapacityError("q = " + std::to_string(params.q) + " exceeds the criterion cap");
  }
  if (gcd(params.n, params.q - 1) != 1) return false;
  const Field& F = *params.field;
  std::vector<u64> images;
  images.reserve(params.q + 1);
  for (Element x : mu_subgroup(F, params.q)) {
    const Element base = F.add(F.pow(x, params.d), params.a);
    if (F.is_zero(base)) return false;  // the point leaves mu_{q+1}
    images.push_back(F.mul(F.pow(x, params.n), F.pow(base, params.q - 1)).value);
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

/// u f(X)
inline Binomial transform_alpha(const Binomial& f, Element u) {
  const Field& F = f.field();
  if (F.is_zero(u)) throw DomainError("alpha needs u != 0");
  return Binomial::make(f.field_ptr(), F.mul(u, f.lead()), f.m0(), F.mul(u, f.trail()), f.n0());
}

/// f(X)^p
inline Binomial transform_beta(const Binomial& f) {
  const Field& F = f.field();
  const u64 p = F.characteristic(), qm1 = F.order() - 1;
  return Binomial::make(f.field_ptr(), F.frobenius(f.lead()), mulmod(f.m0(), p, qm1),
                        F.frobenius(f.trail()), mulmod(f.n0(), p, qm1));
}

/// f(v X^s)
inline Binomial transform_gamma(const Binomial& f, Element v, u64 s) {
  const Field& F = f.field();
  const u64 qm1 = F.order() - 1;
  if (F.is_zero(v)) throw DomainError("gamma needs v != 0");
  if (s == 0 || gcd(s, qm1) != 1) throw DomainError("gamma needs gcd(s, Q-1) = 1");
  return Binomial::make(f.field_ptr(), F.mul(f.lead(), F.pow(v, f.m0())), mulmod(s, f.m0(), qm1),
                        F.mul(f.trail(), F.pow(v, f.n0())), mulmod(s, f.n0(), qm1));
}

/// u f(v X^s)^{p^i}
inline Binomial transform_combined(const Binomial& f, Element u, Element v, u64 s, unsigned i) {
  Binomial g = transform_gamma(f, v, s);
  for (unsigned k = 0; k < i; ++k) g = transform_beta(g);
  return transform_alpha(g, u);
}

}  // namespace permbin

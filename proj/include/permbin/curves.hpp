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

// The curve side of X^n (X^{d(q-1)} + a) over F_{q^2}.
//
// On mu_{q+1} the map x -> x^n (x^d + a)^{q-1} agrees with G = P/Q where
//
//   n >= d:  P = a^q X^n + X^{n-d},  Q = X^d + a
//   n <  d:  P = a^q X^d + 1,        Q = X^{2d-n} + a X^{d-n}
//
// and N(G) = (P(X)Q(Y) - P(Y)Q(X)) / (X - Y). Zeros of N(G) off the
// diagonal are exactly the collisions G(x) = G(y), x != y.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/binomial.hpp"
#include "permbin/error.hpp"
#include "permbin/field.hpp"
#include "permbin/poly.hpp"

namespace permbin {

inline constexpr u64 kPointCountCap = u64{1} << 12;

struct RationalMap {
  UniPoly P;
  UniPoly Q;
  u64 degree = 0;
};

inline void require_quadratic(const PBFamilyParams& params) {
  if (params.e != 2) throw DomainError("curve objects are defined for e = 2 only");
  if (auto why = family_violation(params)) throw DomainError("inadmissible parameters: " + *why);
}

/// a^{q+1}
inline Element norm_of(const PBFamilyParams& params) {
  return params.field->pow(params.a, params.q + 1);
}

inline RationalMap build_G(const PBFamilyParams& params) {
  require_quadratic(params);
  const Field& F = *params.field;
  const Element aq = F.pow(params.a, params.q);
  const u64 n = params.n, d = params.d;
  RationalMap g;
  if (n >= d) {
    g.P = upoly::add(F, upoly::monomial(aq, n), upoly::monomial(F.one(), n - d));
    g.Q = upoly::add(F, upoly::monomial(F.one(), d), upoly::monomial(params.a, 0));
    g.degree = n;
  } else {
    g.P = upoly::add(F, upoly::monomial(aq, d), upoly::monomial(F.one(), 0));
    g.Q = upoly::add(F, upoly::monomial(F.one(), 2 * d - n), upoly::monomial(params.a, d - n));
    g.degree = 2 * d - n;
  }
  if (norm_of(params) != F.one() && upoly::degree(upoly::gcd(F, g.P, g.Q)) > 0) {
    throw InternalError("gcd(P, Q) != 1 although a^{q+1} != 1");
  }
  return g;
}

/// Upper bound on deg N(G): n + d - 1 if n >= d, else 3d - n - 1.
inline u64 ng_degree_bound(u64 n, u64 d) { return n >= d ? n + d - 1 : 3 * d - n - 1; }

/// N(G), computed by synthetic division of P(X)Q(Y) - P(Y)Q(X) by X - Y.
inline BivariatePoly numerator_NG(const Field& F, const RationalMap& g) {
  if (upoly::degree(upoly::gcd(F, g.P, g.Q)) > 0) throw DomainError("numerator_NG needs gcd(P, Q) = 1");
  const std::size_t width = std::max(g.P.size(), g.Q.size());
  auto coeff = [&](const UniPoly& a, std::size_t k) { return k < a.size() ? a[k] : F.zero(); };

  // rows[i] = coefficient of X^i as a polynomial in Y.
  std::vector<UniPoly> rows(width);
  for (std::size_t i = 0; i < width; ++i) {
    UniPoly row(width, F.zero());
    for (std::size_t j = 0; j < width; ++j) {
      row[j] = F.sub(F.mul(coeff(g.P, i), coeff(g.Q, j)), F.mul(coeff(g.P, j), coeff(g.Q, i)));
    }
    upoly::trim(row);
    rows[i] = std::move(row);
  }

  // Divide by X - Y: B_{k-1} = A_k + Y B_k, remainder A_0 + Y B_0.
  const UniPoly y{F.zero(), F.one()};
  std::vector<UniPoly> quot(width);
  UniPoly carry;
  for (std::size_t k = width; k-- > 1;) {
    carry = upoly::add(F, rows[k], upoly::mul(F, y, carry));
    quot[k - 1] = carry;
  }
  const UniPoly remainder = upoly::add(F, rows[0], upoly::mul(F, y, carry));
  if (!remainder.empty()) throw InternalError("division of N(G) by X - Y left a remainder");

  BivariatePoly out;
  for (std::size_t i = 0; i < quot.size(); ++i) {
    for (std::size_t j = 0; j < quot[i].size(); ++j) {
      if (quot[i][j].value != 0) out.add_term(F, i, j, quot[i][j]);
    }
  }
  return out;
}

inline BivariatePoly numerator_NG(const PBFamilyParams& params) {
  return numerator_NG(*params.field, build_G(params));
}

/// The two coefficient polynomials (at Y = 1) of the quadratic whose
/// composition with Z^d is the homogenized N(G): first the Z^2 coefficient,
/// then the Z coefficient, up to nonzero scalars.
inline std::pair<UniPoly, UniPoly> primitivity_pair(const PBFamilyParams& params) {
  const Field& F = *params.field;
  const Element norm = norm_of(params);
  const Element minus_one = F.neg(F.one());
  const u64 n = params.n, d = params.d;
  UniPoly c2, c1;
  if (n > d) {
    c2 = upoly::geometric(F, n - d);
    c1 = upoly::scale(F, upoly::geometric(F, n), norm);
    // (X^{n-d} - X^d) / (X - 1)
    UniPoly mid;
    if (n - d > d) {
      mid = upoly::mul(F, upoly::monomial(F.one(), d), upoly::geometric(F, n - 2 * d));
    } else if (n - d < d) {
      mid = upoly::scale(F, upoly::mul(F, upoly::monomial(F.one(), n - d), upoly::geometric(F, 2 * d - n)),
                         minus_one);
    }
    c1 = upoly::add(F, c1, mid);
  } else if (n < d) {
    c2 = upoly::geometric(F, d - n);
    c1 = upoly::sub(F, upoly::mul(F, upoly::monomial(norm, d - n), upoly::geometric(F, n)),
                    upoly::geometric(F, 2 * d - n));
  } else {
    c1 = upoly::scale(F, upoly::geometric(F, n), F.sub(norm, F.one()));
  }
  return {c2, c1};
}

/// Whether the two coefficient polynomials above are coprime.
inline bool primitivity_check(const PBFamilyParams& params) {
  require_quadratic(params);
  if (norm_of(params) == params.field->one()) {
    throw DomainError("primitivity check needs a^{q+1} != 1");
  }
  auto [c2, c1] = primitivity_pair(params);
  const UniPoly g = upoly::gcd(*params.field, c2, c1);
  return !g.empty() && upoly::degree(g) == 0;
}

/// Zeros (x, y) of `poly` in F^2 with x != y.
inline u64 count_offdiagonal_points(const BivariatePoly& poly, const Field& F,
                                    u64 cap = kPointCountCap) {
  if (poly.is_zero()) throw DomainError("point count of the zero polynomial is undefined");
  require_enumerable(F, cap);
  u64 count = 0;
  for (u64 xi = 0; xi < F.order(); ++xi) {
    const Element x = F.element_at(xi);
    const UniPoly row = poly.at_x(F, x);
    for (u64 yi = 0; yi < F.order(); ++yi) {
      if (yi != xi && upoly::eval(F, row, F.element_at(yi)).value == 0) ++count;
    }
  }
  return count;
}

/// Zeros (x, y) with x != y restricted to x, y in mu_{q+1}.
inline u64 count_mu_offdiagonal_points(const BivariatePoly& poly, const Field& F, u64 q) {
  if (poly.is_zero()) throw DomainError("point count of the zero polynomial is undefined");
  const auto mu = mu_subgroup(F, q);
  u64 count = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const UniPoly row = poly.at_x(F, mu[i]);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (i != j && upoly::eval(F, row, mu[j]).value == 0) ++count;
    }
  }
  return count;
}

/// q - (delta-1)(delta-2) sqrt(q) - 2 delta. Exact when q is a perfect
/// square; otherwise a long double value with an error bound from a 2^-32
/// relative budget on the square-root term.
struct HasseWeilBound {
  long double value = 0;
  bool exact = false;
  i64 exact_value = 0;  // valid when exact
  long double error_bound = 0;

  bool positive() const { return exact ? exact_value > 0 : value - error_bound > 0; }
};

inline HasseWeilBound hasse_weil_lower(u64 q, u64 delta) {
  if (q < 1 || delta < 1) throw DomainError("hasse_weil_lower needs q >= 1 and delta >= 1");
  const i64 genus_term = static_cast<i64>((delta - 1) * (delta >= 2 ? delta - 2 : 0));
  HasseWeilBound out;
  const u64 root = isqrt(q);
  if (root * root == q) {
    out.exact = true;
    out.exact_value = static_cast<i64>(q) - genus_term * static_cast<i64>(root) - 2 * static_cast<i64>(delta);
    out.value = static_cast<long double>(out.exact_value);
    return out;
  }
  const long double sqrt_term = static_cast<long double>(genus_term) * std::sqrt(static_cast<long double>(q));
  out.value = static_cast<long double>(q) - sqrt_term - 2.0L * static_cast<long double>(delta);
  out.error_bound = sqrt_term * std::ldexp(1.0L, -32);
  return out;
}

struct CurveDiagnostics {
  u64 delta = 0;            // degree bound on N(G)
  u64 observed_degree = 0;  // total degree of the computed N(G)
  std::optional<u64> affine_count;
  HasseWeilBound hw_lower;
  u64 mu_offdiagonal = 0;
  bool injective_on_mu = false;
};

/// N(G) diagnostics over F_{q^2}; the full affine count is skipped above
/// kPointCountCap.
inline CurveDiagnostics diagnose(const PBFamilyParams& params) {
  require_quadratic(params);
  const Field& F = *params.field;
  const BivariatePoly ng = numerator_NG(params);
  CurveDiagnostics out;
  out.delta = ng_degree_bound(params.n, params.d);
  out.observed_degree = static_cast<u64>(std::max(0L, ng.total_degree()));
  if (!ng.is_zero() && F.order() <= kPointCountCap) out.affine_count = count_offdiagonal_points(ng, F);
  out.hw_lower = hasse_weil_lower(F.order(), out.delta);
  out.mu_offdiagonal = ng.is_zero() ? 0 : count_mu_offdiagonal_points(ng, F, params.q);
  out.injective_on_mu = out.mu_offdiagonal == 0;
  return out;
}

}  // namespace permbin

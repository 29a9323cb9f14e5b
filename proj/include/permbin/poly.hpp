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

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "permbin/error.hpp"
#include "permbin/field.hpp"

namespace permbin {

/// Dense univariate polynomial over a field, little-endian. The zero
/// polynomial has no coefficients.
using UniPoly = std::vector<Element>;

namespace upoly {

inline void trim(UniPoly& a) {
  while (!a.empty() && a.back().value == 0) a.pop_back();
}

inline long degree(const UniPoly& a) { return static_cast<long>(a.size()) - 1; }

/// c X^k
inline UniPoly monomial(Element c, u64 k) {
  if (c.value == 0) return {};
  UniPoly out(k + 1, Element{0});
  out[k] = c;
  return out;
}

inline UniPoly add(const Field& F, UniPoly a, const UniPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Element{0});
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = F.add(a[k], b[k]);
  trim(a);
  return a;
}

inline UniPoly scale(const Field& F, UniPoly a, Element c) {
  for (auto& x : a) x = F.mul(x, c);
  trim(a);
  return a;
}

inline UniPoly sub(const Field& F, const UniPoly& a, const UniPoly& b) {
  return add(F, a, scale(F, b, F.neg(F.one())));
}

inline UniPoly mul(const Field& F, const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly out(a.size() + b.size() - 1, Element{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

inline Element eval(const Field& F, const UniPoly& a, Element x) {
  Element acc = F.zero();
  for (std::size_t k = a.size(); k-- > 0;) acc = F.add(F.mul(acc, x), a[k]);
  return acc;
}

/// (quotient, remainder) of a by a nonzero b.
inline std::pair<UniPoly, UniPoly> divmod(const Field& F, UniPoly a, const UniPoly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UniPoly quot(a.size() - b.size() + 1, Element{0});
  const Element lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Element c = F.mul(a.back(), lead_inv);
    quot[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = F.sub(a[shift + k], F.mul(c, b[k]));
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

inline UniPoly monic(const Field& F, UniPoly a) {
  if (a.empty()) return a;
  const Element lead_inv = F.inv(a.back());
  return scale(F, std::move(a), lead_inv);
}

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(const Field& F, UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(F, std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, std::move(a));
}

/// 1 + X + ... + X^{k-1}
inline UniPoly geometric(const Field& F, u64 k) { return UniPoly(k, F.one()); }

}  // namespace upoly

/// Sparse bivariate polynomial: (i, j) -> coefficient of X^i Y^j, no zero
/// entries.
class BivariatePoly {
 public:
  using Key = std::pair<u64, u64>;

  void add_term(const Field& F, u64 i, u64 j, Element c) {
    auto [it, inserted] = terms_.try_emplace(Key{i, j}, c);
    if (!inserted) it->second = F.add(it->second, c);
    if (it->second.value == 0) terms_.erase(it);
  }

  const std::map<Key, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  long total_degree() const {
    long deg = -1;
    for (const auto& [key, c] : terms_) deg = std::max(deg, static_cast<long>(key.first + key.second));
    return deg;
  }

  Element eval(const Field& F, Element x, Element y) const {
    Element acc = F.zero();
    for (const auto& [key, c] : terms_) {
      acc = F.add(acc, F.mul(c, F.mul(F.pow(x, key.first), F.pow(y, key.second))));
    }
    return acc;
  }

  /// The univariate polynomial in Y obtained by fixing X = x.
  UniPoly at_x(const Field& F, Element x) const {
    UniPoly out;
    for (const auto& [key, c] : terms_) {
      if (out.size() <= key.second) out.resize(key.second + 1, Element{0});
      out[key.second] = F.add(out[key.second], F.mul(c, F.pow(x, key.first)));
    }
    upoly::trim(out);
    return out;
  }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  std::map<Key, Element> terms_;
};

}  // namespace permbin

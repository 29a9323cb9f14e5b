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

// Finite fields F_{p^m} in polynomial basis.
//
// An element is stored as the integer sum c_i p^i of its coefficient vector
// (c_0, ..., c_{m-1}). Comparing these integers compares coefficient vectors
// from the top coefficient down; this is the single element order used
// wherever a "least" choice is made (modulus, primitive element, orbit
// representatives, embeddings).
//
// Construction is deterministic: the modulus is the least monic irreducible
// polynomial of degree m and xi is the least element of multiplicative
// order p^m - 1. Fields with at most FieldOptions::table_limit elements get
// exp/log tables; larger ones use direct polynomial arithmetic and cannot
// take discrete logarithms.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/error.hpp"

namespace permbin {

struct Element {
  u64 value = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

struct FieldOptions {
  u64 table_limit = u64{1} << 20;
  bool require_tables = false;
  // Largest field order accepted at all. Keeps every product of two
  // exponents inside 128 bits and trial division of q - 1 cheap.
  u64 max_order = u64{1} << 48;
};

namespace detail {

// Dense polynomials over F_p, little-endian, no trailing zeros.
using Coeffs = std::vector<u64>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs poly_mod(Coeffs a, const Coeffs& f, u64 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const u64 lead_inv = *invmod(f.back(), p);
  while (a.size() > df) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t k = 0; k <= df; ++k) {
      a[shift + k] = (a[shift + k] + p - mulmod(c, f[k], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f,
                          u64 p) {
  if (a.empty() || b.empty()) return {};
  Coeffs prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(prod), f, p);
}

inline Coeffs poly_powmod(Coeffs base, u64 exp, const Coeffs& f, u64 p) {
  Coeffs result{1};
  base = poly_mod(std::move(base), f, p);
  while (exp > 0) {
    if (exp & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    exp >>= 1;
  }
  return poly_mod(std::move(result), f, p);
}

inline Coeffs poly_gcd(Coeffs a, Coeffs b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

/// Rabin's test: a degree-m polynomial over F_p is irreducible iff it has
/// no common factor with X^{p^k} - X for every 1 <= k <= m/2.
inline bool is_irreducible(const Coeffs& f, u64 p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  Coeffs h{0, 1};
  for (std::size_t k = 1; k <= m / 2; ++k) {
    h = poly_powmod(h, p, f, p);
    Coeffs diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;  // f divides X^{p^k} - X
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(u64 p, unsigned m, const FieldOptions& options = {});

class Field {
 public:
  u64 characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  u64 order() const { return q_; }
  /// Little-endian coefficients of the monic modulus, length degree() + 1.
  const std::vector<u64>& modulus() const { return modulus_; }
  Element xi() const { return xi_; }
  bool has_tables() const { return !exp_.empty() || q_ == 2; }

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  bool is_zero(Element x) const { return x.value == 0; }
  bool contains(Element x) const { return x.value < q_; }

  /// Image of the integer k under Z -> F_p -> F_q.
  Element from_int(i64 k) const { return {mod(k, p_)}; }

  /// The element with index `index` in the element order, 0 <= index < q.
  Element element_at(u64 index) const { return {index}; }

  Element from_digits(std::span<const u64> digits) const {
    if (digits.size() > m_) throw DomainError("too many coefficients for field");
    u64 value = 0;
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (digits[k] >= p_) throw DomainError("coefficient out of range [0, p)");
      value = value * p_ + digits[k];
    }
    return {value};
  }

  std::vector<u64> digits(Element x) const {
    std::vector<u64> out(m_, 0);
    u64 v = x.value;
    for (unsigned k = 0; k < m_; ++k) {
      out[k] = v % p_;
      v /= p_;
    }
    return out;
  }

  Element add(Element x, Element y) const {
    if (p_ == 2) return {x.value ^ y.value};
    if (m_ == 1) return {(x.value + y.value) % p_};
    u64 result = 0, scale = 1, a = x.value, b = y.value;
    for (unsigned k = 0; k < m_; ++k) {
      result += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return {result};
  }

  Element neg(Element x) const {
    if (p_ == 2) return x;
    if (m_ == 1) return {(p_ - x.value) % p_};
    u64 result = 0, scale = 1, a = x.value;
    for (unsigned k = 0; k < m_; ++k) {
      result += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return {result};
  }

  Element sub(Element x, Element y) const { return add(x, neg(y)); }

  Element mul(Element x, Element y) const {
    if (x.value == 0 || y.value == 0) return {0};
    if (!exp_.empty()) {
      u64 k = static_cast<u64>(log_[x.value]) + log_[y.value];
      if (k >= q_ - 1) k -= q_ - 1;
      return {exp_[k]};
    }
    return mul_direct(x, y);
  }

  /// x^e with 0^0 = 1.
  Element pow(Element x, u64 e) const {
    if (x.value == 0) return {e == 0 ? u64{1} : u64{0}};
    e %= (q_ - 1);
    if (!exp_.empty()) return {exp_[mulmod(log_[x.value], e, q_ - 1)]};
    Element result = one();
    while (e > 0) {
      if (e & 1) result = mul_direct(result, x);
      x = mul_direct(x, x);
      e >>= 1;
    }
    return result;
  }

  /// x^e for a signed exponent; x must be nonzero when e < 0.
  Element pow_signed(Element x, i64 e) const {
    if (e >= 0) return pow(x, static_cast<u64>(e));
    return pow(inv(x), static_cast<u64>(-e));
  }

  Element inv(Element x) const {
    if (x.value == 0) throw DomainError("zero has no inverse");
    if (!exp_.empty()) {
      u64 k = log_[x.value];
      return {exp_[k == 0 ? 0 : q_ - 1 - k]};
    }
    return pow(x, q_ - 2);
  }

  Element div(Element x, Element y) const { return mul(x, inv(y)); }

  /// xi^k.
  Element exp(u64 k) const {
    k %= (q_ - 1);
    if (!exp_.empty()) return {exp_[k]};
    return pow(xi_, k);
  }

  /// Discrete logarithm base xi, in [0, q - 2].
  u64 log(Element x) const {
    if (x.value == 0) throw DomainError("discrete log of zero is undefined");
    if (!contains(x)) throw DomainError("element not in field");
    if (q_ == 2) return 0;
    if (exp_.empty()) {
      throw CapacityError("discrete log unavailable: field of order " +
                          std::to_string(q_) + " has no tables");
    }
    return log_[x.value];
  }

  /// x^{p^times}.
  Element frobenius(Element x, unsigned times = 1) const {
    for (unsigned k = 0; k < times % m_; ++k) x = pow(x, p_);
    return x;
  }

  /// Multiplicative order of a nonzero element.
  u64 multiplicative_order(Element x) const {
    if (x.value == 0) throw DomainError("zero has no multiplicative order");
    u64 order = q_ - 1;
    for (u64 r : prime_divisors(q_ - 1)) {
      while (order % r == 0 && pow(x, order / r) == one()) order /= r;
    }
    return order;
  }

  /// Same characteristic, degree and modulus (and hence the same xi).
  bool same_as(const Field& other) const {
    return this == &other ||
           (p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_);
  }

  std::string name() const {
    return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
  }

 private:
  friend FieldPtr make_field(u64, unsigned, const FieldOptions&);

  Field(u64 p, unsigned m, u64 q, std::vector<u64> modulus)
      : p_(p), m_(m), q_(q), modulus_(std::move(modulus)) {}

  Element mul_direct(Element x, Element y) const {
    if (p_ == 2) {
      // Carry-less product, then reduction by the modulus bit pattern.
      u128 a = x.value, prod = 0;
      for (u64 b = y.value; b != 0; b >>= 1, a <<= 1) {
        if (b & 1) prod ^= a;
      }
      for (int bit = 2 * static_cast<int>(m_) - 2; bit >= static_cast<int>(m_); --bit) {
        if ((prod >> bit) & 1) prod ^= static_cast<u128>(modulus_bits_) << (bit - m_);
      }
      return {static_cast<u64>(prod)};
    }
    if (m_ == 1) return {mulmod(x.value, y.value, p_)};
    auto a = digits(x), b = digits(y);
    detail::trim(a);
    detail::trim(b);
    auto prod = detail::poly_mulmod(a, b, modulus_, p_);
    return from_digits(prod);
  }

  u64 p_;
  unsigned m_;
  u64 q_;
  std::vector<u64> modulus_;
  u64 modulus_bits_ = 0;  // characteristic 2 only
  Element xi_{1};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

inline FieldPtr make_field(u64 p, unsigned m, const FieldOptions& options) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("extension degree must be at least 1");
  const u64 q = ipow(p, m, options.max_order);
  if (options.require_tables && q > options.table_limit) {
    throw CapacityError("field of order " + std::to_string(q) +
                        " exceeds the table limit " + std::to_string(options.table_limit));
  }

  // Least monic irreducible: scan the lower coefficients in element order.
  std::vector<u64> modulus;
  for (u64 lower = 0; lower < q; ++lower) {
    detail::Coeffs f(m + 1, 0);
    u64 v = lower;
    for (unsigned k = 0; k < m; ++k, v /= p) f[k] = v % p;
    f[m] = 1;
    if (detail::is_irreducible(f, p)) {
      modulus = std::move(f);
      break;
    }
  }
  if (modulus.empty()) throw InternalError("no irreducible polynomial found");

  auto field = std::shared_ptr<Field>(new Field(p, m, q, modulus));
  if (p == 2) {
    for (unsigned k = 0; k <= m; ++k) field->modulus_bits_ |= modulus[k] << k;
  }

  // Least element of full order.
  const auto primes = prime_divisors(q - 1);
  bool found = false;
  for (u64 idx = 1; idx < q && !found; ++idx) {
    const Element g{idx};
    found = std::all_of(primes.begin(), primes.end(), [&](u64 r) {
      return field->pow(g, (q - 1) / r) != field->one();
    });
    if (found) field->xi_ = g;
  }
  if (!found) throw InternalError("no primitive element found");

  if (q <= options.table_limit && q > 2) {
    field->exp_.resize(q - 1);
    field->log_.assign(q, 0);
    Element x = field->one();
    for (u64 k = 0; k < q - 1; ++k) {
      field->exp_[k] = static_cast<std::uint32_t>(x.value);
      field->log_[x.value] = static_cast<std::uint32_t>(k);
      x = field->mul_direct(x, field->xi_);
    }
  }
  return field;
}

/// The (q+1)-th roots of unity in F_{q^2}, listed as (xi^{q-1})^k for
/// k = 0, ..., q.
inline std::vector<Element> mu_subgroup(const Field& field, u64 q) {
  if (static_cast<u128>(q) * q != field.order()) {
    throw DomainError("field order " + std::to_string(field.order()) +
                      " is not the square of " + std::to_string(q));
  }
  const Element g = field.exp(q - 1);
  std::vector<Element> out;
  out.reserve(q + 1);
  Element x = field.one();
  for (u64 k = 0; k <= q; ++k) {
    out.push_back(x);
    x = field.mul(x, g);
  }
  return out;
}

inline u64 discrete_log(const Field& field, Element x) { return field.log(x); }

/// A fixed embedding F_q -> F_{q^e}: the generator t of the smaller field's
/// polynomial basis goes to the least root of its modulus in the larger
/// field.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr base, FieldPtr ext) : base_(std::move(base)), ext_(std::move(ext)) {
    if (base_->characteristic() != ext_->characteristic() ||
        ext_->degree() % base_->degree() != 0) {
      throw DomainError(base_->name() + " is not a subfield of " + ext_->name());
    }
    const u64 q = base_->order();
    const u64 big = ext_->order();
    // Subfield elements other than zero are the powers of xi^{(Q-1)/(q-1)}.
    const Element g = ext_->exp((big - 1) / (q - 1));
    std::optional<Element> best;
    Element x = ext_->one();
    for (u64 k = 0; k < q - 1; ++k, x = ext_->mul(x, g)) {
      if (is_root(x) && (!best || x < *best)) best = x;
    }
    if (base_->degree() == 1 && is_root(ext_->zero())) best = ext_->zero();
    if (!best) throw InternalError("modulus of subfield has no root");
    Element power = ext_->one();
    for (unsigned k = 0; k < base_->degree(); ++k) {
      basis_images_.push_back(power);
      power = ext_->mul(power, *best);
    }
  }

  Element operator()(Element x) const {
    if (!base_->contains(x)) throw DomainError("element not in the subfield");
    Element out = ext_->zero();
    const auto c = base_->digits(x);
    for (unsigned k = 0; k < c.size(); ++k) {
      out = ext_->add(out, ext_->mul(ext_->from_int(static_cast<i64>(c[k])), basis_images_[k]));
    }
    return out;
  }

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }

 private:
  bool is_root(Element r) const {
    Element acc = ext_->zero();
    const auto& f = base_->modulus();
    for (std::size_t k = f.size(); k-- > 0;) {
      acc = ext_->add(ext_->mul(acc, r), ext_->from_int(static_cast<i64>(f[k])));
    }
    return ext_->is_zero(acc);
  }

  FieldPtr base_;
  FieldPtr ext_;
  std::vector<Element> basis_images_;
};

}  // namespace permbin

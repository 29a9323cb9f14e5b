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

// Machine-integer number theory used throughout: gcds, modular powers,
// factorization by trial division and prime-power recognition. All values
// are small enough (< 2^63) that 128-bit intermediates suffice.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "permbin/error.hpp"

namespace permbin {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

/// gcd(|a|, b) for a possibly negative a; gcd(0, b) = b.
inline u64 gcd_signed(i64 a, u64 b) {
  return std::gcd(static_cast<u64>(a < 0 ? -a : a), b);
}

/// Least non-negative residue of a mod m (m > 0), valid for negative a.
inline u64 mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1. For m == 1 the
/// answer is 0 (the only residue).
inline std::optional<u64> invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) return std::nullopt;
  return mod(t, m);
}

/// Exact integer power; throws CapacityError on overflow past `limit`.
inline u64 ipow(u64 base, unsigned exp, u64 limit = ~u64{0}) {
  u64 result = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base != 0 && result > limit / base) {
      throw CapacityError("integer power overflows the configured limit");
    }
    result *= base;
  }
  return result;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 f : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % f == 0) return n == f;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Distinct prime divisors in ascending order (trial division).
inline std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// All positive divisors in ascending order.
inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> small, large;
  for (u64 f = 1; f * f <= n; ++f) {
    if (n % f == 0) {
      small.push_back(f);
      if (f != n / f) large.push_back(n / f);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline u64 euler_phi(u64 n) {
  u64 result = n;
  for (u64 p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

/// (p, m) with q = p^m, or nullopt when q is not a prime power.
inline std::optional<std::pair<u64, unsigned>> prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  auto primes = prime_divisors(q);
  if (primes.size() != 1) return std::nullopt;
  unsigned m = 0;
  for (u64 r = q; r > 1; r /= primes[0]) ++m;
  return std::pair{primes[0], m};
}

/// True for 1, 2, 4, 8, ...
inline bool is_power_of_two(u64 n) { return n != 0 && (n & (n - 1)) == 0; }

inline u64 isqrt(u64 n) {
  u64 r = 0;
  for (u64 bit = u64{1} << 31; bit != 0; bit >>= 1) {
    u64 c = r | bit;
    if (static_cast<u128>(c) * c <= n) r = c;
  }
  return r;
}

}  // namespace permbin

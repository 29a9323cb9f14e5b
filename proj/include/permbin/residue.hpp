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

// Arithmetic in Z_{q-1}, written with representatives {1, ..., q-1}, and the
// action of G = {t unit : t = +-1 mod (q-1)/d} on it:
//
//   t(n) = t*n       if t = 1 mod (q-1)/d
//   t(n) = t*n - d   if t = -1 mod (q-1)/d
//
// When (q-1)/d <= 2 every unit is congruent to both 1 and -1 and both rules
// are applied.

#include <algorithm>
#include <string>
#include <vector>

#include "permbin/arith.hpp"
#include "permbin/error.hpp"

namespace permbin {

struct ResidueRing {
  u64 modulus;

  /// Representative in {1, ..., modulus}.
  u64 normalize(i64 r) const {
    const u64 m = mod(r, modulus);
    return m == 0 ? modulus : m;
  }
};

/// Least s = r + k*step (k = 0, 1, ...) with gcd(s, dividend) = 1.
inline u64 coprime_lift(u64 r, u64 dividend, u64 step) {
  if (step == 0 || dividend % step != 0) {
    throw DomainError("step " + std::to_string(step) + " does not divide " +
                      std::to_string(dividend));
  }
  if (r == 0 || gcd(r, step) != 1) {
    throw DomainError("coprime_lift needs gcd(r, step) = 1 with r > 0");
  }
  for (u64 s = r;; s += step) {
    if (gcd(s, dividend) == 1) return s;
  }
}

struct OrbitMember {
  u64 t;
  bool plus;   // t = 1 mod (q-1)/d: acts by n -> t*n
  bool minus;  // t = -1 mod (q-1)/d: acts by n -> t*n - d

  /// theta(t) as a sign; ambiguous members report +1.
  int sign() const { return plus ? 1 : -1; }
};

struct OrbitGroup {
  u64 qm1;
  u64 d;
  std::vector<OrbitMember> members;  // ascending t

  u64 step() const { return qm1 / d; }
};

inline void require_divisor(u64 qm1, u64 d) {
  if (d == 0 || qm1 == 0 || qm1 % d != 0) {
    throw DomainError("d = " + std::to_string(d) + " does not divide q - 1 = " +
                      std::to_string(qm1));
  }
}

inline OrbitGroup orbit_group(u64 qm1, u64 d) {
  require_divisor(qm1, d);
  OrbitGroup group{qm1, d, {}};
  const u64 step = qm1 / d;
  for (u64 t = 1; t <= qm1; ++t) {
    if (gcd(t, qm1) != 1) continue;
    const u64 r = t % step;
    const bool plus = r == 1 % step;
    const bool minus = r == (step - 1) % step;
    if (plus || minus) group.members.push_back({t, plus, minus});
  }
  return group;
}

/// Images of n under one member (one or two of them).
template <typename Out>
void act(const OrbitGroup& g, const OrbitMember& member, u64 n, Out out) {
  const ResidueRing ring{g.qm1};
  const u64 tn = mulmod(member.t, n, g.qm1);
  if (member.plus) out(ring.normalize(static_cast<i64>(tn)));
  if (member.minus) out(ring.normalize(static_cast<i64>(tn) - static_cast<i64>(g.d)));
}

/// The G-orbit of n, sorted ascending.
inline std::vector<u64> orbit_of(const OrbitGroup& g, u64 n) {
  std::vector<u64> out;
  for (const auto& member : g.members) {
    act(g, member, n, [&](u64 image) { out.push_back(image); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// n*: the least element of the orbit of n.
inline u64 orbit_min(const OrbitGroup& g, u64 n) {
  u64 best = ResidueRing{g.qm1}.normalize(static_cast<i64>(n));
  for (const auto& member : g.members) {
    act(g, member, n, [&](u64 image) { best = std::min(best, image); });
  }
  return best;
}

/// Partition of {1, ..., q-1} into G-orbits, each block ascending, blocks
/// ordered by their least element.
inline std::vector<std::vector<u64>> g_orbits(u64 qm1, u64 d) {
  const OrbitGroup g = orbit_group(qm1, d);
  std::vector<char> seen(qm1 + 1, 0);
  std::vector<std::vector<u64>> blocks;
  for (u64 n = 1; n <= qm1; ++n) {
    if (seen[n]) continue;
    auto block = orbit_of(g, n);
    for (u64 x : block) {
      if (seen[x]) throw InternalError("G-orbits overlap; action is not a group action");
      seen[x] = 1;
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace permbin

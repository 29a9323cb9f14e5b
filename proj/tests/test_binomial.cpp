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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "permbin/binomial.hpp"

using namespace permbin;

namespace {

FieldPtr quad(u64 q) {
  const auto pp = *prime_power(q);
  return make_field(pp.first, pp.second * 2);
}

std::vector<Element> table_of(const Binomial& f) { return as_function_table(f); }

}  // namespace

TEST(Binomial, NormalizationAndRejection) {
  const auto F = make_field(2, 4);
  const auto f = Binomial::make(F, F->exp(3), 2, F->exp(1), 16);  // 16 = 1 mod 15
  EXPECT_EQ(f.m0(), 2u);
  EXPECT_EQ(f.n0(), 1u);
  EXPECT_EQ(f.lead(), F->exp(3));
  EXPECT_EQ(f.trail(), F->exp(1));
  EXPECT_THROW(Binomial::make(F, F->one(), 15, F->one(), 1), DomainError);
  EXPECT_THROW(Binomial::make(F, F->one(), 4, F->one(), 19), DomainError);
  EXPECT_THROW(Binomial::make(F, F->zero(), 4, F->one(), 1), DomainError);
}

TEST(Binomial, TablesMatchNaiveEvaluation) {
  const auto F = make_field(3, 2);
  const oracle::NaiveField N(3, F->modulus());
  for (u64 m0 = 2; m0 < 8; ++m0) {
    for (u64 n0 = 1; n0 < m0; ++n0) {
      const auto f = Binomial::make(F, F->exp(2), m0, F->exp(5), n0);
      const auto t = table_of(f);
      const auto o = oracle::binomial_table(N, F->exp(2).value, m0, F->exp(5).value, n0);
      for (u64 x = 0; x < F->order(); ++x) EXPECT_EQ(t[x].value, o[x]);
      EXPECT_EQ(t[0], F->zero());
      EXPECT_EQ(is_permutation(f), oracle::is_perm(o));
    }
  }
}

TEST(Binomial, ExponentReductionGivesSameTable) {
  // X(X^9 + a) and X^16(X^9 + a) over F_16: 16 = 1 mod 15.
  const auto F = make_field(2, 4);
  const auto a = F->exp(4);
  const auto f = Binomial::make(F, F->one(), 10, a, 1);
  const auto g = Binomial::make(F, F->one(), 25, a, 16);
  EXPECT_EQ(f, g);
  EXPECT_EQ(table_of(f), table_of(g));
}

TEST(Binomial, FamilyAdmissibility) {
  const auto F = quad(4);
  PBFamilyParams p{F, 4, 2, 13, 3, F->exp(5)};
  EXPECT_FALSE(family_violation(p));
  p.n = 15;
  EXPECT_TRUE(family_violation(p));
  p.n = 1;
  p.d = 5;  // d(q-1) = 15
  EXPECT_TRUE(family_violation(p));
  p.d = 3;
  p.a = F->zero();
  EXPECT_TRUE(family_violation(p));
  EXPECT_THROW(from_family(p), DomainError);
}

TEST(Binomial, Q4N13D3IsPB) {
  const auto F = quad(4);
  const Element a = F->exp(5);
  EXPECT_EQ(F->multiplicative_order(a), 3u);
  const PBFamilyParams p{F, 4, 2, 13, 3, a};
  EXPECT_TRUE(is_permutation(from_family(p)));
  EXPECT_TRUE(is_pb_mu_criterion(p));
}

// mu criterion vs brute force, d | q+1 and beyond.
TEST(Binomial, MuCriterionAgreesWithBruteForce) {
  for (u64 q : {2u, 3u, 4u, 5u, 7u}) {
    const auto F = quad(q);
    for (u64 d = 1; d <= 2 * (q + 1); ++d) {
      for (u64 n = 1; n < q * q - 1; ++n) {
        for (u64 ai = 1; ai < F->order(); ++ai) {
          const PBFamilyParams p{F, q, 2, n, d, F->element_at(ai)};
          if (family_violation(p)) continue;
          ASSERT_EQ(is_pb_mu_criterion(p), is_permutation(from_family(p)))
              << "q=" << q << " n=" << n << " d=" << d << " a=" << ai;
        }
      }
    }
  }
}

TEST(Binomial, MuCriterionZeroBaseIsNotPB) {
  // a = -x^d for some x in mu_{q+1}
  const auto F = quad(5);
  const auto mu = mu_subgroup(*F, 5);
  const Element a = F->neg(F->pow(mu[1], 2));
  const PBFamilyParams p{F, 5, 2, 1, 2, a};
  EXPECT_FALSE(is_pb_mu_criterion(p));
  EXPECT_FALSE(is_permutation(from_family(p)));
}

TEST(Binomial, Caps) {
  const auto F = make_field(2, 17);
  const auto f = Binomial::make(F, F->one(), 3, F->one(), 1);
  EXPECT_THROW(is_permutation(f), CapacityError);
  const auto G = make_field(2, 42);
  EXPECT_THROW(is_pb_mu_criterion({G, u64{1} << 21, 2, 1, 1, G->one()}), CapacityError);
}

TEST(Binomial, TransformsPreservePermutationProperty) {
  std::mt19937_64 rng(7);
  for (auto [p, m] : std::vector<std::pair<u64, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {5, 1}, {7, 1}, {13, 1}}) {
    const auto F = make_field(p, m);
    const u64 qm1 = F->order() - 1;
    if (qm1 < 3) continue;
    std::vector<u64> units;
    for (u64 s = 1; s < qm1; ++s) {
      if (gcd(s, qm1) == 1) units.push_back(s);
    }
    for (int trial = 0; trial < 200; ++trial) {
      const u64 m0 = 2 + rng() % (qm1 - 2);
      const u64 n0 = 1 + rng() % (m0 - 1);
      const auto f = Binomial::make(F, F->exp(rng() % qm1), m0, F->exp(rng() % qm1), n0);
      const bool pb = is_permutation(f);
      const Element u = F->exp(rng() % qm1), v = F->exp(rng() % qm1);
      const u64 s = units[rng() % units.size()];
      EXPECT_EQ(is_permutation(transform_alpha(f, u)), pb);
      EXPECT_EQ(is_permutation(transform_beta(f)), pb);
      EXPECT_EQ(is_permutation(transform_gamma(f, v, s)), pb);
      // gamma is composition with a bijection: same multiset of values.
      auto t1 = table_of(f), t2 = table_of(transform_gamma(f, v, s));
      std::sort(t1.begin(), t1.end());
      std::sort(t2.begin(), t2.end());
      EXPECT_EQ(t1, t2);
    }
  }
}

TEST(Binomial, TransformCommutation) {
  const auto F = make_field(3, 2);
  const auto f = Binomial::make(F, F->exp(1), 5, F->exp(6), 2);
  const Element u = F->exp(3), v = F->exp(5);
  const u64 s = 3;
  EXPECT_EQ(transform_gamma(transform_alpha(f, u), v, s), transform_alpha(transform_gamma(f, v, s), u));
  EXPECT_EQ(transform_gamma(transform_beta(f), v, s), transform_beta(transform_gamma(f, v, s)));
  EXPECT_EQ(transform_beta(transform_alpha(f, u)), transform_alpha(transform_beta(f), F->pow(u, 3)));
  EXPECT_THROW(transform_gamma(f, v, 2), DomainError);
  EXPECT_THROW(transform_alpha(f, F->zero()), DomainError);
}

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

#include "oracles.hpp"
#include "permbin/field.hpp"

using namespace permbin;

namespace {

const std::vector<std::pair<u64, unsigned>> kSmallFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 2}, {11, 1}, {13, 2}};

}  // namespace

TEST(Field, KnownModuliAndGenerators) {
  const auto f16 = make_field(2, 4);
  EXPECT_EQ(f16->modulus(), (std::vector<u64>{1, 1, 0, 0, 1}));  // X^4 + X + 1
  EXPECT_EQ(f16->xi(), Element{2});
  const auto f9 = make_field(3, 2);
  EXPECT_EQ(f9->modulus(), (std::vector<u64>{1, 0, 1}));  // X^2 + 1
  EXPECT_EQ(f9->digits(f9->xi()), (std::vector<u64>{1, 1}));  // 1 + i
}

TEST(Field, ModulusIsLeastIrreducible) {
  for (auto [p, m] : kSmallFields) {
    const auto F = make_field(p, m);
    EXPECT_TRUE(oracle::irreducible_by_trial(p, F->modulus())) << F->name();
    // Every monic polynomial with smaller lower part is reducible.
    u64 lower = 0;
    for (unsigned k = m; k-- > 0;) lower = lower * p + F->modulus()[k];
    for (u64 v = 0; v < lower; ++v) {
      std::vector<u64> g(m + 1, 0);
      u64 x = v;
      for (unsigned k = 0; k < m; ++k) {
        g[k] = x % p;
        x /= p;
      }
      g[m] = 1;
      EXPECT_FALSE(oracle::irreducible_by_trial(p, g)) << F->name() << " lower " << v;
    }
  }
}

TEST(Field, ArithmeticMatchesNaiveOracle) {
  for (auto [p, m] : kSmallFields) {
    const auto F = make_field(p, m);
    const oracle::NaiveField N(p, F->modulus());
    for (u64 a = 0; a < F->order(); ++a) {
      for (u64 b = 0; b < F->order(); b += 1 + F->order() / 40) {
        EXPECT_EQ(F->mul(Element{a}, Element{b}).value, N.mul(a, b));
        EXPECT_EQ(F->add(Element{a}, Element{b}).value, N.add(a, b));
      }
      EXPECT_EQ(F->neg(Element{a}).value, N.neg(a));
      EXPECT_EQ(F->pow(Element{a}, 7).value, N.pow(a, 7));
      if (a) EXPECT_EQ(F->mul(Element{a}, F->inv(Element{a})), F->one());
    }
  }
}

TEST(Field, XiIsLeastPrimitive) {
  for (auto [p, m] : kSmallFields) {
    const auto F = make_field(p, m);
    const oracle::NaiveField N(p, F->modulus());
    if (F->order() == 2) continue;
    EXPECT_EQ(N.order_of(F->xi().value), F->order() - 1) << F->name();
    for (u64 a = 1; a < F->xi().value; ++a) EXPECT_LT(N.order_of(a), F->order() - 1);
  }
}

TEST(Field, ExpLogInverse) {
  for (auto [p, m] : kSmallFields) {
    const auto F = make_field(p, m);
    for (u64 k = 0; k + 1 < F->order(); ++k) EXPECT_EQ(F->log(F->exp(k)), k);
    EXPECT_THROW(F->log(F->zero()), DomainError);
  }
}

TEST(Field, TableFreeAgreesWithTables) {
  FieldOptions no_tables;
  no_tables.table_limit = 1;
  for (auto [p, m] : kSmallFields) {
    const auto T = make_field(p, m);
    const auto D = make_field(p, m, no_tables);
    EXPECT_FALSE(D->has_tables() && D->order() > 2);
    EXPECT_EQ(D->modulus(), T->modulus());
    EXPECT_EQ(D->xi(), T->xi());
    for (u64 a = 0; a < T->order(); a += 1 + T->order() / 50) {
      for (u64 b = 0; b < T->order(); b += 1 + T->order() / 50) {
        EXPECT_EQ(D->mul(Element{a}, Element{b}), T->mul(Element{a}, Element{b}));
      }
    }
    if (D->order() > 2) EXPECT_THROW(D->log(D->one()), CapacityError);
  }
}

TEST(Field, LargeFieldWithoutTables) {
  const auto F = make_field(2, 40);
  EXPECT_FALSE(F->has_tables());
  const Element x{123456789};
  EXPECT_EQ(F->pow(x, F->order() - 1), F->one());
  EXPECT_EQ(F->mul(x, F->inv(x)), F->one());
  const auto G = make_field(1000003, 2);
  EXPECT_EQ(G->pow(Element{987654321}, G->order() - 1), G->one());
  EXPECT_THROW(make_field(2, 60), CapacityError);
  EXPECT_THROW(make_field(4, 2), DomainError);
}

TEST(Field, FrobeniusIsPthPower) {
  const auto F = make_field(3, 3);
  for (u64 a = 0; a < F->order(); ++a) {
    EXPECT_EQ(F->frobenius(Element{a}), F->pow(Element{a}, 3));
    EXPECT_EQ(F->frobenius(Element{a}, 3), Element{a});
  }
}

TEST(Field, FromIntAndDigits) {
  const auto F = make_field(5, 2);
  EXPECT_EQ(F->from_int(8), Element{3});
  EXPECT_EQ(F->from_int(-1), Element{4});
  const std::vector<u64> d{2, 3};
  EXPECT_EQ(F->from_digits(d), Element{17});
  EXPECT_EQ(F->digits(Element{17}), d);
  const std::vector<u64> bad{5};
  EXPECT_THROW(F->from_digits(bad), DomainError);
}

TEST(Field, MuSubgroup) {
  for (u64 q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto pp = *prime_power(q);
    const auto F = make_field(pp.first, pp.second * 2);
    const auto mu = mu_subgroup(*F, q);
    EXPECT_EQ(mu.size(), q + 1);
    std::set<Element> distinct(mu.begin(), mu.end());
    EXPECT_EQ(distinct.size(), q + 1);
    for (Element x : mu) EXPECT_EQ(F->pow(x, q + 1), F->one());
  }
}

TEST(Field, SubfieldEmbeddingIsHomomorphism) {
  for (auto [base, ext] : std::vector<std::pair<std::pair<u64, unsigned>, unsigned>>{
           {{2, 2}, 4}, {{3, 1}, 2}, {{2, 3}, 6}, {{3, 2}, 4}, {{5, 1}, 2}}) {
    const auto B = make_field(base.first, base.second);
    const auto E = make_field(base.first, ext);
    const SubfieldEmbedding emb(B, E);
    for (u64 a = 0; a < B->order(); ++a) {
      for (u64 b = 0; b < B->order(); ++b) {
        EXPECT_EQ(emb(B->mul(Element{a}, Element{b})), E->mul(emb(Element{a}), emb(Element{b})));
        EXPECT_EQ(emb(B->add(Element{a}, Element{b})), E->add(emb(Element{a}), emb(Element{b})));
      }
      const Element image = emb(Element{a});
      EXPECT_EQ(E->pow(image, B->order()), image);
    }
  }
  EXPECT_THROW(SubfieldEmbedding(make_field(2, 3), make_field(2, 4)), DomainError);
}

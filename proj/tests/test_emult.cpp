/*
 * Copyright (c) 2026 The Ironwood Project Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ironwood/emult.hpp"

#include <gtest/gtest.h>

#include "ironwood/cburau.hpp"

namespace ironwood {
namespace {

BraidWord word_of(int n, std::initializer_list<int> signed_indices) {
  BraidWord w{n, {}};
  for (int v : signed_indices) {
    w.letters.push_back({std::uint8_t(v > 0 ? v : -v), std::int8_t(v > 0 ? 1 : -1)});
  }
  return w;
}

TEST(EmultStep, FirstGeneratorFromIdentity) {
  const Field f(FieldSpec::prime_field(5));
  const TValues tv{{2, 3, 4}};
  const auto out = emult_step(f, EMultState::identity(3), {1, 1}, tv);
  // row 1 = (-tau_1, 1, 0) = (3, 1, 0)
  EXPECT_EQ(out.matrix.at(0, 0), 3);
  EXPECT_EQ(out.matrix.at(0, 1), 1);
  EXPECT_EQ(out.matrix.at(0, 2), 0);
  EXPECT_EQ(out.perm.to_one_based(), (std::vector<int>{2, 1, 3}));
}

TEST(EmultStep, InversePairRestoresState) {
  const Field f(FieldSpec::gf256());
  Rng rng(5);
  const TValues tv = random_tvalues(f, 6, rng);
  const EMultState start{random_invertible(f, 6, rng), permutation_of(random_word(6, 9, {1, 5}, rng))};
  for (int i = 1; i < 6; ++i) {
    auto s = emult_step(f, start, {std::uint8_t(i), 1}, tv);
    s = emult_step(f, std::move(s), {std::uint8_t(i), -1}, tv);
    ASSERT_EQ(s, start);
    auto t = emult_step(f, start, {std::uint8_t(i), -1}, tv);
    t = emult_step(f, std::move(t), {std::uint8_t(i), 1}, tv);
    ASSERT_EQ(t, start);
  }
}

TEST(EmultStep, TauLookupUsesAccumulatedPermutation) {
  // with sigma_0 = [2,1,3] a positive b_1 step must use tau_{sigma0(1)} = tau_2;
  // cross-checked against the Laurent oracle which applies ^sigma before evaluating
  const Field f(FieldSpec::prime_field(7));
  const TValues tv{{2, 3, 4}};
  const EMultState start{Matrix::identity(3), Permutation::from_one_based({2, 1, 3})};
  const auto got = emult_step(f, start, {1, 1}, tv);

  const auto oracle_pair = cb_multiply(CBPair{LaurentMatrix::identity(3), start.perm},
                                       cb_generator(1, +1, 3));
  const auto expected = cb_evaluate(oracle_pair, tv, f);
  EXPECT_EQ(got, expected);
  // direct value: column 1 scaled by -tau_2 = -3 = 4 mod 7
  EXPECT_EQ(got.matrix.at(0, 0), 4);
}

TEST(EmultStep, IndexOutOfRangeThrows) {
  const Field f(FieldSpec::prime_field(5));
  const TValues tv{{2, 3, 4}};
  EXPECT_THROW(emult_step(f, EMultState::identity(3), {3, 1}, tv), std::invalid_argument);
  EXPECT_THROW(emult_step(f, EMultState::identity(3), {0, 1}, tv), std::invalid_argument);
}

TEST(Emult, EmptyWordReturnsStateUnchanged) {
  const Field f(FieldSpec::gf256());
  Rng rng(9);
  const EMultState s{random_invertible(f, 4, rng), Permutation::identity(4)};
  const TValues tv = random_tvalues(f, 4, rng);
  EXPECT_EQ(emult(f, s, BraidWord{4, {}}, tv), s);
}

TEST(Emult, BraidRelationInvariance) {
  const Field f(FieldSpec::prime_field(5));
  const TValues tv{{2, 3, 4}};
  const auto a = emult(f, EMultState::identity(3), word_of(3, {1, 2, 1}), tv);
  const auto b = emult(f, EMultState::identity(3), word_of(3, {2, 1, 2}), tv);
  EXPECT_EQ(a, b);
}

TEST(Emult, FarCommutationInvariance) {
  const Field f(FieldSpec::gf256());
  Rng rng(31);
  const TValues tv = random_tvalues(f, 5, rng);
  const auto a = emult(f, EMultState::identity(5), word_of(5, {1, 3}), tv);
  const auto b = emult(f, EMultState::identity(5), word_of(5, {3, 1}), tv);
  EXPECT_EQ(a, b);
}

TEST(Emult, HomomorphismOverConcatenation) {
  const Field f(FieldSpec::gf256());
  Rng rng(17);
  const TValues tv = random_tvalues(f, 8, rng);
  for (int t = 0; t < 50; ++t) {
    const auto u = random_word(8, 30, {1, 7}, rng);
    const auto v = random_word(8, 30, {1, 7}, rng);
    const auto s0 = EMultState{random_invertible(f, 8, rng), Permutation::identity(8)};
    ASSERT_EQ(emult(f, emult(f, s0, u, tv), v, tv), emult(f, s0, concat(u, v), tv));
  }
}

TEST(Emult, MatchesLaurentOracle) {
  const Field f(FieldSpec::prime_field(5));
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto w = random_word(4, uniform_below(rng, 13), {1, 3}, rng);
    const TValues tv = random_tvalues(f, 4, rng);
    ASSERT_EQ(emult(f, EMultState::identity(4), w, tv),
              cb_evaluate(cb_of_word(w), tv, f));
  }
}

TEST(Emult, PreservesInvertibility) {
  const Field f(FieldSpec::prime_field(11));
  Rng rng(55);
  for (int t = 0; t < 25; ++t) {
    const auto w = random_word(4, 40, {1, 3}, rng);
    const TValues tv = random_tvalues(f, 4, rng);
    const EMultState s0{random_invertible(f, 4, rng), Permutation::identity(4)};
    ASSERT_TRUE(is_invertible(f, emult(f, s0, w, tv).matrix));
  }
}

TEST(Emult, RewriteFuzzKeepsResultInvariant) {
  // relation rewrites and inverse-pair insertions never change the action
  const Field f(FieldSpec::gf256());
  Rng rng(2468);
  const int n = 6;
  for (int t = 0; t < 300; ++t) {
    const TValues tv = random_tvalues(f, n, rng);
    const auto u = random_word(n, 12, {1, n - 1}, rng);
    const auto v = random_word(n, 12, {1, n - 1}, rng);
    BraidWord lhs{n, {}}, rhs{n, {}};
    switch (uniform_below(rng, 3)) {
      case 0: {  // adjacent braid relation, random common sign
        const int i = 1 + int(uniform_below(rng, n - 2));
        const int s = coin_flip(rng) ? 1 : -1;
        lhs = word_of(n, {s * i, s * (i + 1), s * i});
        rhs = word_of(n, {s * (i + 1), s * i, s * (i + 1)});
        break;
      }
      case 1: {  // far commutation, independent signs
        const int i = 1 + int(uniform_below(rng, n - 3));
        const int j = i + 2 + int(uniform_below(rng, n - 1 - (i + 2) + 1));
        const int si = coin_flip(rng) ? 1 : -1;
        const int sj = coin_flip(rng) ? 1 : -1;
        lhs = word_of(n, {si * i, sj * j});
        rhs = word_of(n, {sj * j, si * i});
        break;
      }
      default: {  // inverse-pair insertion vs deletion
        const int i = 1 + int(uniform_below(rng, n - 1));
        const int s = coin_flip(rng) ? 1 : -1;
        lhs = word_of(n, {s * i, -s * i});
        rhs = BraidWord{n, {}};
        break;
      }
    }
    const auto left = concat(concat(u, lhs), v);
    const auto right = concat(concat(u, rhs), v);
    const EMultState s0{random_invertible(f, n, rng),
                        permutation_of(random_word(n, 10, {1, n - 1}, rng))};
    ASSERT_EQ(emult(f, s0, left, tv), emult(f, s0, right, tv));
  }
}

TEST(Emult, PerLetterCostBound) {
  // each letter costs at most 3N + 2 field operations
  const Field f(FieldSpec::gf256());
  Rng rng(777);
  const int n = 16;
  const TValues tv = random_tvalues(f, n, rng);
  const auto w = random_word(n, 2000, {1, n - 1}, rng);
  EmultStats stats;
  (void)emult(f, EMultState::identity(n), w, tv, &stats);
  EXPECT_EQ(stats.letters, w.size());
  EXPECT_LE(stats.field_ops, stats.letters * std::uint64_t(3 * n + 2));
  EXPECT_GT(stats.field_ops, stats.letters * std::uint64_t(2 * n));
}

TEST(ProbablyEqualBraids, Examples) {
  const Field f(FieldSpec::gf256());
  Rng rng(404);
  const auto u = random_word(5, 20, {1, 4}, rng);
  EXPECT_TRUE(probably_equal_braids(f, u, u, 5, rng));
  EXPECT_TRUE(probably_equal_braids(f, word_of(5, {1, 3}), word_of(5, {3, 1}), 5, rng));
  EXPECT_FALSE(probably_equal_braids(f, word_of(4, {1}), word_of(4, {2}), 5, rng));
  // same permutation, different braids: b1 b1 vs empty
  EXPECT_FALSE(probably_equal_braids(f, word_of(4, {1, 1}), BraidWord{4, {}}, 5, rng));
  EXPECT_THROW(probably_equal_braids(f, word_of(4, {1}), word_of(5, {1}), 1, rng),
               std::invalid_argument);
}

TEST(TValues, DomainChecks) {
  const Field f(FieldSpec::prime_field(5));
  TValues bad{{0, 2, 3}};
  EXPECT_THROW(bad.validate(f), std::invalid_argument);
  TValues ones{{1, 2, 3}};
  EXPECT_THROW(ones.validate(f), std::invalid_argument);
  TValues good{{2, 3, 4}};
  EXPECT_NO_THROW(good.validate(f));
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const TValues tv = random_tvalues(f, 4, rng);
    for (FieldElement tau : tv.taus) {
      ASSERT_GE(tau, 2);
      ASSERT_LT(tau, 5);
    }
  }
}

}  // namespace
}  // namespace ironwood

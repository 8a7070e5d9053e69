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

#include "ironwood/cburau.hpp"

#include <gtest/gtest.h>

#include "ironwood/laurent.hpp"

namespace ironwood {
namespace {

BraidWord word_of(int n, std::initializer_list<int> signed_indices) {
  BraidWord w{n, {}};
  for (int v : signed_indices) {
    w.letters.push_back({std::uint8_t(v > 0 ? v : -v), std::int8_t(v > 0 ? 1 : -1)});
  }
  return w;
}

TEST(LaurentPoly, BasicArithmetic) {
  const auto t1 = LaurentPoly::term(3, 1, 1, 1);
  const auto t1_inv = LaurentPoly::term(3, 1, -1, 1);
  EXPECT_EQ(t1 * t1_inv, LaurentPoly::constant(3, 1));
  EXPECT_TRUE((t1 - t1).is_zero());
  const auto sum = t1 + LaurentPoly::constant(3, 2);
  EXPECT_EQ(sum.to_string(), "2 + t1");
}

TEST(LaurentPoly, PermuteVariablesIsLeftAction) {
  Rng rng(5);
  const auto p = LaurentPoly::term(4, 1, 2, 3) + LaurentPoly::term(4, 2, -1, 1) +
                 LaurentPoly::constant(4, 7);
  for (int t = 0; t < 50; ++t) {
    const auto s = permutation_of(random_word(4, 10, {1, 3}, rng));
    const auto r = permutation_of(random_word(4, 10, {1, 3}, rng));
    ASSERT_EQ(p.permute_vars(compose(s, r)), p.permute_vars(r).permute_vars(s));
  }
}

TEST(LaurentPoly, EvaluateReducesCoefficients) {
  const Field f(FieldSpec::prime_field(5));
  const TValues tv{{2, 3, 4}};
  // 7 * t1^2 * t3^-1 at (2,3,4): 7 mod 5 = 2; 2*4*inv(4) = 2... then * t1^2 = 2*4=8=3
  const auto p = LaurentPoly::term(3, 1, 2, 7) * LaurentPoly::term(3, 3, -1, 1);
  const FieldElement got = p.evaluate(f, tv);
  const FieldElement expected = f.mul(f.from_int(7), f.mul(f.pow(2, 2), f.inv(4)));
  EXPECT_EQ(got, expected);
}

TEST(CBurau, GeneratorRowsMatchDefinition) {
  // N=3, i=1, +: row 1 = (-t1, 1, 0)
  const auto g1 = cb_generator(1, +1, 3);
  EXPECT_EQ(g1.matrix.at(0, 0), LaurentPoly::term(3, 1, 1, -1));
  EXPECT_EQ(g1.matrix.at(0, 1), LaurentPoly::constant(3, 1));
  EXPECT_TRUE(g1.matrix.at(0, 2).is_zero());
  EXPECT_EQ(g1.matrix.at(1, 1), LaurentPoly::constant(3, 1));
  EXPECT_EQ(g1.matrix.at(2, 2), LaurentPoly::constant(3, 1));
  EXPECT_EQ(g1.perm.to_one_based(), (std::vector<int>{2, 1, 3}));

  // N=3, i=2, +: row 2 = (t2, -t2, 1)
  const auto g2 = cb_generator(2, +1, 3);
  EXPECT_EQ(g2.matrix.at(1, 0), LaurentPoly::term(3, 2, 1, 1));
  EXPECT_EQ(g2.matrix.at(1, 1), LaurentPoly::term(3, 2, 1, -1));
  EXPECT_EQ(g2.matrix.at(1, 2), LaurentPoly::constant(3, 1));
  EXPECT_EQ(g2.perm.to_one_based(), (std::vector<int>{1, 3, 2}));

  EXPECT_THROW(cb_generator(3, +1, 3), std::invalid_argument);
  EXPECT_THROW(cb_generator(0, +1, 3), std::invalid_argument);
}

TEST(CBurau, InverseGeneratorCancels) {
  // group-inverse consistency forces the first-row form of CB(b_1^-1)
  for (int n = 3; n <= 5; ++n) {
    for (int i = 1; i < n; ++i) {
      const auto prod = cb_multiply(cb_generator(i, +1, n), cb_generator(i, -1, n));
      ASSERT_EQ(prod, CBPair::identity(n)) << "n=" << n << " i=" << i;
      const auto prod2 = cb_multiply(cb_generator(i, -1, n), cb_generator(i, +1, n));
      ASSERT_EQ(prod2, CBPair::identity(n));
    }
  }
}

TEST(CBurau, IdentityPairIsNeutral) {
  const auto b = cb_of_word(word_of(4, {1, -2, 3}));
  EXPECT_EQ(cb_multiply(CBPair::identity(4), b), b);
  EXPECT_EQ(cb_multiply(b, CBPair::identity(4)), b);
}

TEST(CBurau, BraidRelationsHoldExactly) {
  for (int n = 3; n <= 5; ++n) {
    for (int i = 1; i + 1 < n; ++i) {
      const int j = i + 1;
      ASSERT_EQ(cb_of_word(word_of(n, {i, j, i})), cb_of_word(word_of(n, {j, i, j})))
          << "adjacent relation n=" << n << " i=" << i;
    }
    for (int i = 1; i < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        ASSERT_EQ(cb_of_word(word_of(n, {i, j})), cb_of_word(word_of(n, {j, i})))
            << "far commutation n=" << n;
      }
    }
  }
}

TEST(CBurau, RepresentationHomomorphism) {
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    const auto u = random_word(4, 6, {1, 3}, rng);
    const auto v = random_word(4, 6, {1, 3}, rng);
    ASSERT_EQ(cb_of_word(concat(u, v)), cb_multiply(cb_of_word(u), cb_of_word(v)));
  }
}

TEST(CBurau, EmptyWordIsIdentityPair) {
  EXPECT_EQ(cb_of_word(BraidWord{4, {}}), CBPair::identity(4));
  EXPECT_EQ(cb_of_word(word_of(4, {1, -1})), CBPair::identity(4));
}

TEST(CBurau, EvaluateExamples) {
  const Field f(FieldSpec::prime_field(5));
  const TValues tv{{2, 3, 4}};
  EXPECT_EQ(cb_evaluate(CBPair::identity(3), tv, f), EMultState::identity(3));

  // -tau_1 = -2 = 3 mod 5
  const auto ev = cb_evaluate(cb_of_word(word_of(3, {1})), tv, f);
  EXPECT_EQ(ev.matrix.at(0, 0), 3);
  EXPECT_EQ(ev.matrix.at(0, 1), 1);
  EXPECT_EQ(ev.matrix.at(0, 2), 0);
  EXPECT_EQ(ev.perm.to_one_based(), (std::vector<int>{2, 1, 3}));
}

TEST(CBurau, EvaluatedMatrixAlwaysInvertible) {
  // det(CB(beta)) evaluates to a unit whenever all tau_i != 0
  const Field f(FieldSpec::prime_field(11));
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto w = random_word(4, 10, {1, 3}, rng);
    const TValues tv = random_tvalues(f, 4, rng);
    const auto ev = cb_evaluate(cb_of_word(w), tv, f);
    ASSERT_TRUE(is_invertible(f, ev.matrix));
  }
}

TEST(CBurau, OracleEquivalenceWithEmult) {
  // the module's reason to exist: cb_evaluate(cb_of_word(beta)) == emult
  const Field f(FieldSpec::prime_field(5));
  Rng rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto w = random_word(4, uniform_below(rng, 13), {1, 3}, rng);
    const TValues tv = random_tvalues(f, 4, rng);
    const EMultState via_oracle = cb_evaluate(cb_of_word(w), tv, f);
    const EMultState via_kernel = emult(f, EMultState::identity(4), w, tv);
    ASSERT_EQ(via_oracle, via_kernel) << "word: " << to_text(w);
  }
}

TEST(CBurau, LaurentMatrixPrinterShowsEntries) {
  const auto g = cb_generator(1, -1, 3);
  const std::string s = g.matrix.to_string();
  EXPECT_NE(s.find("-t2^-1"), std::string::npos);
}

}  // namespace
}  // namespace ironwood

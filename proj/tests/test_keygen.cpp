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

#include "ironwood/keygen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ironwood/ttp.hpp"

namespace ironwood::keygen {
namespace {

TEST(SystemParams, RejectsBadShape) {
  Rng rng(1);
  EXPECT_THROW(gen_system_params(5, FieldSpec::prime_field(5), rng), std::invalid_argument);
  EXPECT_THROW(gen_system_params(2, FieldSpec::prime_field(5), rng), std::invalid_argument);
  EXPECT_THROW(gen_system_params(34, FieldSpec::prime_field(5), rng), std::invalid_argument);
}

TEST(SystemParams, PowersAreLinearlyIndependent) {
  Rng rng(7);
  for (const FieldSpec spec : {FieldSpec::prime_field(5), FieldSpec::gf256()}) {
    const auto params = gen_system_params(4, spec, rng);
    ASSERT_TRUE(is_invertible(params.f(), params.m0));
    std::vector<Vector> rows;
    for (const Matrix& p : params.m0_powers) rows.push_back(p.data());
    EXPECT_EQ(row_rank(params.f(), rows), params.n);
  }
}

TEST(SystemParams, PaperDeploymentShape) {
  Rng rng(11);
  const auto params = gen_system_params(16, FieldSpec::gf256(), rng);
  EXPECT_EQ(params.n, 16);
  EXPECT_EQ(params.f().q(), 256u);
  EXPECT_EQ(params.m0_powers.size(), 16u);
}

TEST(SystemParams, SeededDeterminism) {
  Rng a(42), b(42);
  const auto pa = gen_system_params(4, FieldSpec::prime_field(5), a);
  const auto pb = gen_system_params(4, FieldSpec::prime_field(5), b);
  EXPECT_EQ(pa.m0, pb.m0);
}

TEST(SampleM0Polynomial, KnownCoefficientVectors) {
  Rng rng(3);
  const auto params = gen_system_params(4, FieldSpec::prime_field(7), rng);
  const Field& f = params.f();
  // reconstruct from explicit coefficients through the cached powers
  auto rebuild = [&](const Vector& coeffs) {
    Matrix m(params.n);
    for (int k = 0; k < params.n; ++k) {
      m = matrix_add(f, m, scalar_mul(f, coeffs[k], params.m0_powers[k]));
    }
    return m;
  };
  EXPECT_EQ(rebuild({1, 0, 0, 0}), Matrix::identity(4));
  EXPECT_EQ(rebuild({0, 1, 0, 0}), params.m0);

  for (int t = 0; t < 50; ++t) {
    const auto [coeffs, m] = sample_m0_polynomial(params, rng);
    ASSERT_EQ(rebuild(coeffs), m);
    ASSERT_TRUE(is_invertible(f, m));
  }
}

TEST(SampleM0Polynomial, OutputsCommute) {
  Rng rng(5);
  const auto params = gen_system_params(6, FieldSpec::gf256(), rng);
  for (int t = 0; t < 20; ++t) {
    const auto a = sample_m0_polynomial(params, rng).second;
    const auto b = sample_m0_polynomial(params, rng).second;
    ASSERT_EQ(matrix_mul(params.f(), a, b), matrix_mul(params.f(), b, a));
  }
}

TEST(TvaluesGeneration, DomainAndCount) {
  Rng rng(9);
  const auto params = gen_system_params(4, FieldSpec::prime_field(5), rng);
  const auto tv = gen_tvalues(params, rng);
  EXPECT_EQ(tv.size(), 4);
  std::set<FieldElement> seen;
  for (int t = 0; t < 300; ++t) {
    for (FieldElement tau : gen_tvalues(params, rng).taus) {
      ASSERT_NE(tau, 0);
      ASSERT_NE(tau, 1);
      seen.insert(tau);
    }
  }
  // F_5 support is exactly {2, 3, 4}
  EXPECT_EQ(seen, (std::set<FieldElement>{2, 3, 4}));
}

TEST(ConjugateSets, StructureAndCommutation) {
  Rng rng(21);
  const auto params = gen_system_params(8, FieldSpec::gf256(), rng);
  TtpConfig cfg;
  cfg.conjugates_per_set = 8;
  cfg.z_length = 24;
  cfg.word_length = 16;
  const auto [alpha, gamma] = gen_conjugate_sets(params, cfg, rng);
  ASSERT_EQ(alpha.size(), 8u);
  ASSERT_EQ(gamma.size(), 8u);
  EXPECT_TRUE(alpha.has_pure_entry());

  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha.pure_flags[i]) {
      ASSERT_TRUE(permutation_of(alpha.conjugates[i]).is_identity());
    }
  }
  // pure_fraction 0.5 of 8
  EXPECT_EQ(std::count(alpha.pure_flags.begin(), alpha.pure_flags.end(), true), 4);

  // every cross pair commutes under the probabilistic check
  for (const auto& a : alpha.conjugates) {
    for (const auto& g : gamma.conjugates) {
      ASSERT_TRUE(probably_equal_braids(params.f(), concat(a, g), concat(g, a), 3, rng));
    }
  }
}

TEST(ConjugateSets, BadConfigRejected) {
  Rng rng(2);
  const auto params = gen_system_params(4, FieldSpec::prime_field(5), rng);
  TtpConfig cfg;
  cfg.conjugates_per_set = 1;
  EXPECT_THROW(gen_conjugate_sets(params, cfg, rng), std::invalid_argument);
  cfg = TtpConfig{};
  cfg.z_length = 0;
  EXPECT_THROW(gen_conjugate_sets(params, cfg, rng), std::invalid_argument);
  cfg = TtpConfig{};
  cfg.pure_fraction = 1.5;
  EXPECT_THROW(gen_conjugate_sets(params, cfg, rng), std::invalid_argument);
}

struct IssuedFixture {
  SystemParams params;
  ConjugateSet alpha, gamma;
  TValues tvals;
  HmacSigner signer{to_bytes("test-signing-key"), "test-ttp"};
};

IssuedFixture small_fixture(std::uint64_t seed) {
  Rng rng(seed);
  IssuedFixture fx{gen_system_params(4, FieldSpec::prime_field(5), rng), {}, {}, {}};
  TtpConfig cfg;
  cfg.conjugates_per_set = 4;
  cfg.z_length = 8;
  cfg.word_length = 8;
  auto sets = gen_conjugate_sets(fx.params, cfg, rng);
  fx.alpha = std::move(sets.first);
  fx.gamma = std::move(sets.second);
  fx.tvals = gen_tvalues(fx.params, rng);
  return fx;
}

TEST(DeviceKey, PublicKeyFactorsAsCTimesM) {
  auto fx = small_fixture(31);
  Rng rng(32);
  const auto issued = gen_device_key_full(fx.params, fx.gamma, fx.tvals, to_bytes("dev1"), 4,
                                          fx.signer, rng);
  const Field& f = fx.params.f();
  // Pub_i.matrix = C_i * M_i with (M_i, sigma_i) = emult((Id, Id), beta_i)
  const EMultState mi = emult(f, EMultState::identity(4), issued.beta, fx.tvals);
  EXPECT_EQ(issued.pub.matrix, matrix_mul(f, issued.material.c_matrix, mi.matrix));
  EXPECT_EQ(issued.pub.perm, mi.perm);
  EXPECT_EQ(issued.pub.perm, permutation_of(issued.beta));

  // C_i inverse is genuine
  EXPECT_EQ(matrix_mul(f, issued.material.c_matrix, issued.material.c_inverse),
            Matrix::identity(4));
}

TEST(DeviceKey, CertificateVerifies) {
  auto fx = small_fixture(41);
  Rng rng(42);
  const auto material =
      gen_device_key(fx.params, fx.gamma, fx.tvals, to_bytes("dev1"), 4, fx.signer, rng);
  EXPECT_TRUE(verify_cert(fx.params.f().spec(), material.cert, fx.signer));

  // one flipped payload byte must break it
  Certificate tampered = material.cert;
  tampered.device_id[0] ^= 1;
  EXPECT_FALSE(verify_cert(fx.params.f().spec(), tampered, fx.signer));

  Certificate wrong_key = material.cert;
  wrong_key.pub.matrix.at(0, 0) ^= 1;
  if (wrong_key.pub.matrix.at(0, 0) >= 5) wrong_key.pub.matrix.at(0, 0) = 0;
  EXPECT_FALSE(verify_cert(fx.params.f().spec(), wrong_key, fx.signer));
}

TEST(DeviceKey, DistinctDevicesGetDistinctSecrets) {
  // collision probability is ~q^-N, so this needs deployment-scale q^N;
  // at toy parameters the 5^4-element coefficient space would birthday-collide
  Rng rng(52);
  IssuedFixture fx{gen_system_params(8, FieldSpec::gf256(), rng), {}, {}, {}};
  TtpConfig cfg;
  cfg.conjugates_per_set = 4;
  cfg.z_length = 8;
  cfg.word_length = 8;
  auto sets = gen_conjugate_sets(fx.params, cfg, rng);
  fx.gamma = std::move(sets.second);
  fx.tvals = gen_tvalues(fx.params, rng);
  std::set<std::vector<FieldElement>> c_matrices;
  for (int i = 0; i < 100; ++i) {
    const auto material = gen_device_key(fx.params, fx.gamma, fx.tvals,
                                         to_bytes("dev" + std::to_string(i)), 4, fx.signer, rng);
    c_matrices.insert(material.c_matrix.data());
  }
  EXPECT_EQ(c_matrices.size(), 100u);
}

TEST(DeviceKey, CompromiseContainment) {
  // device material consists of C_i, C_i^-1 and the certificate alone: no
  // T-values, no conjugate sets, nothing tied to another device's key
  auto fx = small_fixture(61);
  Rng rng(62);
  const auto material =
      gen_device_key(fx.params, fx.gamma, fx.tvals, to_bytes("devA"), 4, fx.signer, rng);
  // binding compiles only while the type has exactly these three members
  const auto& [c_matrix, c_inverse, cert] = material;
  EXPECT_EQ(matrix_mul(fx.params.f(), c_matrix, c_inverse), Matrix::identity(4));
  EXPECT_EQ(cert.device_id, to_bytes("devA"));
}

TEST(Ttp, SeedDerivationIsDeterministic) {
  const auto a = derive_ttp(99, 4, FieldSpec::prime_field(5));
  const auto b = derive_ttp(99, 4, FieldSpec::prime_field(5));
  EXPECT_EQ(a.params.m0, b.params.m0);
  EXPECT_EQ(a.tvals.taus, b.tvals.taus);
  ASSERT_EQ(a.alpha_set.size(), b.alpha_set.size());
  for (std::size_t i = 0; i < a.alpha_set.size(); ++i) {
    EXPECT_EQ(a.alpha_set.conjugates[i], b.alpha_set.conjugates[i]);
  }
  const auto d1 = provision_device(a, 99, to_bytes("dev1"));
  const auto d2 = provision_device(b, 99, to_bytes("dev1"));
  EXPECT_EQ(d1.c_matrix, d2.c_matrix);
  EXPECT_EQ(d1.cert.signature, d2.cert.signature);
  const auto d3 = provision_device(a, 99, to_bytes("dev2"));
  EXPECT_NE(d3.c_matrix, d1.c_matrix);
}

}  // namespace
}  // namespace ironwood::keygen

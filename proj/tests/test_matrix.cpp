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

#include "ironwood/matrix.hpp"

#include <gtest/gtest.h>

namespace ironwood {
namespace {

Matrix from_rows(int n, std::initializer_list<int> values) {
  Matrix m(n);
  auto it = values.begin();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.at(r, c) = FieldElement(*it++);
  }
  return m;
}

TEST(Matrix, MultiplyByIdentity) {
  const Field f(FieldSpec::prime_field(5));
  Rng rng(3);
  const Matrix a = random_matrix(f, 4, rng);
  EXPECT_EQ(matrix_mul(f, a, Matrix::identity(4)), a);
  EXPECT_EQ(matrix_mul(f, Matrix::identity(4), a), a);
}

TEST(Matrix, VectorProductExamples) {
  const Field f(FieldSpec::prime_field(5));
  const Vector v{1, 2, 3};
  EXPECT_EQ(matrix_vec(f, Matrix::identity(3), v), v);
  // hand arithmetic mod 5: [[1,2],[3,4]] * [1,1]^T = [3,2]^T
  const Matrix m = from_rows(2, {1, 2, 3, 4});
  EXPECT_EQ(matrix_vec(f, m, Vector{1, 1}), (Vector{3, 2}));
}

TEST(Matrix, DimensionMismatchThrows) {
  const Field f(FieldSpec::prime_field(5));
  EXPECT_THROW(matrix_mul(f, Matrix::identity(3), Matrix::identity(4)), std::invalid_argument);
  EXPECT_THROW(matrix_vec(f, Matrix::identity(3), Vector{1, 2}), std::invalid_argument);
}

TEST(Matrix, InverseOfIdentity) {
  const Field f(FieldSpec::gf256());
  EXPECT_EQ(matrix_inverse(f, Matrix::identity(5)), Matrix::identity(5));
}

TEST(Matrix, InverseIsInvolution) {
  const Field f(FieldSpec::gf256());
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_invertible(f, 6, rng);
    const Matrix inv = matrix_inverse(f, a);
    EXPECT_EQ(matrix_mul(f, a, inv), Matrix::identity(6));
    EXPECT_EQ(matrix_inverse(f, inv), a);
  }
}

TEST(Matrix, SingularThrows) {
  const Field f(FieldSpec::prime_field(7));
  Matrix zero(3);
  EXPECT_THROW(matrix_inverse(f, zero), SingularMatrixError);
  // rank-1 matrix
  Matrix r1(2);
  r1.at(0, 0) = 1;
  r1.at(0, 1) = 2;
  r1.at(1, 0) = 2;
  r1.at(1, 1) = 4;
  EXPECT_THROW(matrix_inverse(f, r1), SingularMatrixError);
  EXPECT_FALSE(is_invertible(f, r1));
}

TEST(Matrix, EvaluatedBurauGeneratorInvertible) {
  // row 1 = (-tau_1, 1, 0) at tau_1 = 2 over F_5; det = -tau_1 != 0
  const Field f(FieldSpec::prime_field(5));
  Matrix m = Matrix::identity(3);
  m.at(0, 0) = f.neg(2);
  m.at(0, 1) = 1;
  const Matrix inv = matrix_inverse(f, m);
  EXPECT_EQ(matrix_mul(f, m, inv), Matrix::identity(3));
}

TEST(Matrix, RowRankDetectsDependence) {
  const Field f(FieldSpec::prime_field(5));
  std::vector<Vector> rows{{1, 2, 3}, {0, 1, 1}, {0, 0, 4}};
  EXPECT_EQ(row_rank(f, rows), 3);
  std::vector<Vector> dep{{1, 2, 3}, {0, 1, 1}, {2, 0, 2}};  // r3 = 2*r1 + r2
  EXPECT_EQ(row_rank(f, dep), 2);
}

}  // namespace
}  // namespace ironwood

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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ironwood/field.hpp"
#include "ironwood/rng.hpp"

namespace ironwood {

struct SingularMatrixError : std::domain_error {
  SingularMatrixError() : std::domain_error("matrix: singular") {}
};

/// Dense square matrix over F_q, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(std::size_t(n) * n, 0) {}

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int n() const { return n_; }
  FieldElement& at(int r, int c) { return a_[std::size_t(r) * n_ + c]; }
  FieldElement at(int r, int c) const { return a_[std::size_t(r) * n_ + c]; }
  const std::vector<FieldElement>& data() const { return a_; }
  std::vector<FieldElement>& data() { return a_; }

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<FieldElement> a_;
};

using Vector = std::vector<FieldElement>;

inline Matrix matrix_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("matrix_mul: dimension mismatch");
  const int n = a.n();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const FieldElement aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) {
        out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

inline Vector matrix_vec(const Field& f, const Matrix& a, const Vector& v) {
  if (std::size_t(a.n()) != v.size()) throw std::invalid_argument("matrix_vec: dimension mismatch");
  const int n = a.n();
  Vector out(v.size(), 0);
  for (int i = 0; i < n; ++i) {
    FieldElement acc = 0;
    for (int j = 0; j < n; ++j) acc = f.add(acc, f.mul(a.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

inline Matrix scalar_mul(const Field& f, FieldElement c, const Matrix& a) {
  Matrix out(a.n());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = f.mul(c, a.data()[i]);
  return out;
}

inline Matrix matrix_add(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("matrix_add: dimension mismatch");
  Matrix out(a.n());
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    out.data()[i] = f.add(a.data()[i], b.data()[i]);
  }
  return out;
}

/// Gauss-Jordan elimination; throws SingularMatrixError when no inverse
/// exists (on the protocol path that signals invalid key material or a
/// corrupted state, never an honest run).
inline Matrix matrix_inverse(const Field& f, const Matrix& a) {
  const int n = a.n();
  Matrix left = a;
  Matrix right = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (left.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError();
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(left.at(pivot, j), left.at(col, j));
        std::swap(right.at(pivot, j), right.at(col, j));
      }
    }
    const FieldElement scale = f.inv(left.at(col, col));
    for (int j = 0; j < n; ++j) {
      left.at(col, j) = f.mul(scale, left.at(col, j));
      right.at(col, j) = f.mul(scale, right.at(col, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const FieldElement factor = left.at(r, col);
      if (factor == 0) continue;
      for (int j = 0; j < n; ++j) {
        left.at(r, j) = f.sub(left.at(r, j), f.mul(factor, left.at(col, j)));
        right.at(r, j) = f.sub(right.at(r, j), f.mul(factor, right.at(col, j)));
      }
    }
  }
  return right;
}

inline bool is_invertible(const Field& f, const Matrix& a) {
  try {
    matrix_inverse(f, a);
    return true;
  } catch (const SingularMatrixError&) {
    return false;
  }
}

inline Matrix random_matrix(const Field& f, int n, Rng& rng) {
  Matrix m(n);
  for (auto& e : m.data()) e = FieldElement(uniform_below(rng, f.q()));
  return m;
}

inline Matrix random_invertible(const Field& f, int n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, rng);
    if (is_invertible(f, m)) return m;
  }
}

/// Rank of a set of row vectors over F_q (used to check linear independence
/// of the cached m0 powers).
inline int row_rank(const Field& f, std::vector<Vector> rows) {
  int rank = 0;
  const std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < width && rank < int(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < int(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const FieldElement scale = f.inv(rows[rank][col]);
    for (auto& e : rows[rank]) e = f.mul(scale, e);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank) continue;
      const FieldElement factor = rows[r][col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < width; ++j) {
        rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace ironwood

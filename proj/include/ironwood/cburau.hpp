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

#include <stdexcept>

#include "ironwood/braid.hpp"
#include "ironwood/emult.hpp"
#include "ironwood/laurent.hpp"

namespace ironwood {

/// Colored Burau pair: an exact Laurent matrix together with the braid's
/// permutation, multiplied with the permutation-twisted semidirect product.
/// This module is the desk-scale oracle the fast kernel is checked against;
/// it is never on the protocol's runtime path.
struct CBPair {
  LaurentMatrix matrix;
  Permutation perm;

  static CBPair identity(int n) {
    return {LaurentMatrix::identity(n), Permutation::identity(n)};
  }
  bool operator==(const CBPair&) const = default;
};

/// The generator pair for b_i^sign. Positive generators place (t_i, -t_i, 1)
/// in row i at columns (i-1, i, i+1); inverse generators place
/// (1, -1/t_{i+1}, 1/t_{i+1}). Row 1 drops the leading entry. The inverse
/// form is forced by CB(b_i) . ^{sigma_i}CB(b_i^-1) = Id.
inline CBPair cb_generator(int i, int sign, int n) {
  if (i < 1 || i >= n) throw std::invalid_argument("cb_generator: index out of range");
  LaurentMatrix m = LaurentMatrix::identity(n);
  const int r = i - 1;  // 0-based row
  if (sign > 0) {
    m.at(r, r) = LaurentPoly::term(n, i, 1, -1);  // -t_i
    if (i > 1) m.at(r, r - 1) = LaurentPoly::term(n, i, 1, 1);
    m.at(r, r + 1) = LaurentPoly::constant(n, 1);
  } else {
    m.at(r, r) = LaurentPoly::term(n, i + 1, -1, -1);  // -1/t_{i+1}
    if (i > 1) m.at(r, r - 1) = LaurentPoly::constant(n, 1);
    m.at(r, r + 1) = LaurentPoly::term(n, i + 1, -1, 1);
  }
  return {std::move(m), Permutation::transposition(n, i)};
}

/// Semidirect product: (A, p) o (B, r) = (A . ^{p}B, p o r).
inline CBPair cb_multiply(const CBPair& a, const CBPair& b) {
  if (a.matrix.n() != b.matrix.n()) throw std::invalid_argument("cb_multiply: dimension mismatch");
  return {a.matrix * b.matrix.permute_vars(a.perm), compose(a.perm, b.perm)};
}

/// Pi_CB(beta): left-to-right fold over the word's letters. Practical only
/// for small N and short words.
inline CBPair cb_of_word(const BraidWord& word) {
  CBPair acc = CBPair::identity(word.n_strands);
  for (const auto& l : word.letters) {
    acc = cb_multiply(acc, cb_generator(l.index, l.sign, word.n_strands));
  }
  return acc;
}

/// Evaluate every entry at the T-values, reducing into F_q.
inline EMultState cb_evaluate(const CBPair& pair, const TValues& tvals, const Field& f) {
  const int n = pair.matrix.n();
  if (tvals.size() != n) throw std::invalid_argument("cb_evaluate: tvalues size");
  Matrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.at(r, c) = pair.matrix.at(r, c).evaluate(f, tvals);
  }
  return {std::move(out), pair.perm};
}

}  // namespace ironwood

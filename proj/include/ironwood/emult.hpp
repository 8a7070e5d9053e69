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

#include "ironwood/braid.hpp"
#include "ironwood/field.hpp"
#include "ironwood/matrix.hpp"
#include "ironwood/permutation.hpp"

namespace ironwood {

/// The N tau values substituted for the Laurent variables; each must avoid
/// 0 (inverses exist) and 1.
struct TValues {
  std::vector<FieldElement> taus;

  int size() const { return int(taus.size()); }

  void validate(const Field& f) const {
    for (FieldElement t : taus) {
      if (t == 0 || t == 1 || t >= f.q()) {
        throw std::invalid_argument("tvalues: entries must lie in F_q \\ {0,1}");
      }
    }
  }
};

/// Operand/result of E-Multiplication: M in GL(N, F_q) together with the
/// accumulated permutation.
struct EMultState {
  Matrix matrix;
  Permutation perm;

  static EMultState identity(int n) { return {Matrix::identity(n), Permutation::identity(n)}; }
  bool operator==(const EMultState&) const = default;
};

/// Instrumentation record for the kernel: Artin letters processed and the
/// field operations they cost.
struct EmultStats {
  std::uint64_t letters = 0;
  std::uint64_t field_ops = 0;

  EmultStats& operator+=(const EmultStats& o) {
    letters += o.letters;
    field_ops += o.field_ops;
    return *this;
  }
};

/// One E-Multiplication step: (M, s0) * (CB(b_i^sign), sigma_i).
///
/// Right-multiplying by the evaluated, permuted colored Burau generator is a
/// sparse column update. With v = old column i of M (1-based columns):
///   positive sign, t' = tau_{s0(i)}:   col_{i-1} -= (-t')v, col_{i+1} += v,
///                                      col_i = (-t')v
///   negative sign, t' = tau_{s0(i+1)}: col_{i-1} += v, col_{i+1} -= (-1/t')v,
///                                      col_i = (-1/t')v
/// (the i-1 updates are skipped when i = 1). The scaled column is computed
/// once, so each letter costs at most 3N + 2 field operations. The tau lookup
/// uses the CURRENT accumulated permutation, before composing with sigma_i.
inline EMultState emult_step(const Field& f, EMultState state, BraidLetter letter,
                             const TValues& tvals) {
  const int n = state.matrix.n();
  const int i = letter.index;
  if (i < 1 || i >= n) throw std::invalid_argument("emult_step: index out of range");

  Matrix& m = state.matrix;
  const int ci = i - 1;  // 0-based column of strand i

  // snapshot of column i, scaled below
  Vector scaled(n);
  if (letter.sign > 0) {
    const FieldElement tau = tvals.taus[state.perm.apply(i) - 1];
    const FieldElement neg_tau = f.neg(tau);
    for (int r = 0; r < n; ++r) scaled[r] = f.mul(neg_tau, m.at(r, ci));
    if (i > 1) {
      for (int r = 0; r < n; ++r) m.at(r, ci - 1) = f.sub(m.at(r, ci - 1), scaled[r]);
    }
    for (int r = 0; r < n; ++r) m.at(r, ci + 1) = f.add(m.at(r, ci + 1), m.at(r, ci));
    for (int r = 0; r < n; ++r) m.at(r, ci) = scaled[r];
  } else {
    const FieldElement tau = tvals.taus[state.perm.apply(i + 1) - 1];
    const FieldElement neg_inv_tau = f.neg(f.inv(tau));
    for (int r = 0; r < n; ++r) scaled[r] = f.mul(neg_inv_tau, m.at(r, ci));
    if (i > 1) {
      for (int r = 0; r < n; ++r) m.at(r, ci - 1) = f.add(m.at(r, ci - 1), m.at(r, ci));
    }
    for (int r = 0; r < n; ++r) m.at(r, ci + 1) = f.sub(m.at(r, ci + 1), scaled[r]);
    for (int r = 0; r < n; ++r) m.at(r, ci) = scaled[r];
  }

  state.perm = compose(state.perm, Permutation::transposition(n, i));
  return state;
}

/// Left-to-right fold of emult_step over a word; the result depends only on
/// the braid element, not on which freely-equal word represents it.
inline EMultState emult(const Field& f, EMultState state, const BraidWord& word,
                        const TValues& tvals, EmultStats* stats = nullptr) {
  if (word.n_strands != state.matrix.n()) {
    throw std::invalid_argument("emult: strand/dimension mismatch");
  }
  if (tvals.size() != word.n_strands) throw std::invalid_argument("emult: tvalues size");
  const FieldOpCounts before = stats ? f.op_counts() : FieldOpCounts{};
  for (const auto& letter : word.letters) {
    state = emult_step(f, std::move(state), letter, tvals);
  }
  if (stats) {
    stats->letters += word.size();
    stats->field_ops += (f.op_counts() - before).total();
  }
  return state;
}

inline TValues random_tvalues(const Field& f, int n, Rng& rng) {
  if (f.q() < 4) throw std::invalid_argument("tvalues: field too small");
  TValues t;
  t.taus.resize(n);
  for (auto& tau : t.taus) tau = FieldElement(2 + uniform_below(rng, f.q() - 2));
  return t;
}

/// Probabilistic braid-word equality through the E-Multiplication action:
/// true iff both words act identically on `trials` random (state, T-value)
/// probes. Equal braids always compare true; unequal braids fail a probe
/// with overwhelming probability, so false negatives are impossible.
inline bool probably_equal_braids(const Field& f, const BraidWord& u, const BraidWord& v,
                                  int trials, Rng& rng) {
  if (u.n_strands != v.n_strands) throw std::invalid_argument("braid equality: strand mismatch");
  const int n = u.n_strands;
  for (int t = 0; t < trials; ++t) {
    const TValues tv = random_tvalues(f, n, rng);
    EMultState probe{random_invertible(f, n, rng),
                     permutation_of(random_word(n, 16, {1, n - 1}, rng))};
    if (emult(f, probe, u, tv) != emult(f, probe, v, tv)) return false;
  }
  return true;
}

}  // namespace ironwood

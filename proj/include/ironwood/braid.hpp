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

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ironwood/permutation.hpp"
#include "ironwood/rng.hpp"

namespace ironwood {

/// One Artin letter b_i^sign with 1 <= i <= N-1, sign = +/-1.
struct BraidLetter {
  std::uint8_t index = 1;
  std::int8_t sign = 1;

  BraidLetter inverse() const { return {index, std::int8_t(-sign)}; }
  bool operator==(const BraidLetter&) const = default;
};

/// A word in the Artin generators of B_N, stored fully expanded. The empty
/// word is the identity braid. Equality of words is syntactic; equality of
/// the braids they represent is decided through the E-Multiplication action.
struct BraidWord {
  int n_strands = 0;
  std::vector<BraidLetter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const BraidWord&) const = default;

  void validate() const {
    if (n_strands < 2) throw std::invalid_argument("braid: need at least 2 strands");
    for (const auto& l : letters) {
      if (l.index < 1 || l.index >= n_strands || (l.sign != 1 && l.sign != -1)) {
        throw std::invalid_argument("braid: letter out of range");
      }
    }
  }
};

/// Inclusive generator index range [lo, hi], a sub-interval of [1, N-1].
struct IndexRange {
  int lo = 1;
  int hi = 1;

  int width() const { return hi - lo + 1; }
};

inline BraidWord inverse(const BraidWord& w) {
  BraidWord out{w.n_strands, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(it->inverse());
  }
  return out;
}

inline BraidWord concat(const BraidWord& u, const BraidWord& v) {
  if (u.n_strands != v.n_strands) throw std::invalid_argument("braid: strand mismatch");
  BraidWord out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

/// Deletes adjacent b_i^e b_i^-e pairs until none remain. Linear time via a
/// stack scan. Leaves the induced permutation and E-Multiplication action
/// unchanged.
inline BraidWord free_reduce(const BraidWord& w) {
  BraidWord out{w.n_strands, {}};
  out.letters.reserve(w.letters.size());
  for (const auto& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().index == l.index &&
        out.letters.back().sign == -l.sign) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

/// sigma_beta as the left-to-right product of simple transpositions under
/// (p . r)(x) = p(r(x)). The sign of a letter has no effect.
inline Permutation permutation_of(const BraidWord& w) {
  std::vector<std::uint8_t> img(w.n_strands);
  for (int i = 0; i < w.n_strands; ++i) img[i] = std::uint8_t(i);
  // Building the product left to right amounts to swapping IMAGE slots:
  // appending sigma_i on the right swaps images at positions i-1, i.
  for (const auto& l : w.letters) {
    std::swap(img[l.index - 1], img[l.index]);
  }
  return Permutation::from_images_zero_based(std::move(img));
}

/// Uniform i.i.d. letters over index_range x {+1,-1}; freely reduced on
/// return, so the result may be shorter than `length`.
inline BraidWord random_word(int n_strands, std::size_t length, IndexRange range, Rng& rng) {
  if (range.lo < 1 || range.hi >= n_strands || range.lo > range.hi) {
    throw std::invalid_argument("random_word: empty or invalid index range");
  }
  BraidWord w{n_strands, {}};
  w.letters.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const int idx = range.lo + int(uniform_below(rng, std::uint64_t(range.width())));
    w.letters.push_back({std::uint8_t(idx), std::int8_t(coin_flip(rng) ? 1 : -1)});
  }
  return free_reduce(w);
}

/// z w z^-1, freely reduced.
inline BraidWord conjugate(const BraidWord& z, const BraidWord& w) {
  if (z.n_strands != w.n_strands) throw std::invalid_argument("conjugate: strand mismatch");
  return free_reduce(concat(concat(z, w), inverse(z)));
}

/// Factor p as a product of simple transpositions s_{j1} o ... o s_{jm}
/// (composition order = word letter order), by bubble-sorting the one-line
/// notation and reversing the recorded swaps.
inline std::vector<int> transposition_factorization(const Permutation& p) {
  std::vector<int> arr = p.to_one_based();
  std::vector<int> swaps;
  const int n = int(arr.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (arr[j] > arr[j + 1]) {
        std::swap(arr[j], arr[j + 1]);
        swaps.push_back(j + 1);  // 1-based transposition index
        moved = true;
      }
    }
  }
  return {swaps.rbegin(), swaps.rend()};
}

/// A word with identity induced permutation and rich support: draw a random
/// word w, then append the lift of the transposition factorization of
/// sigma_w^-1 with all-positive signs.
inline BraidWord make_pure_word(int n_strands, std::size_t length, IndexRange range, Rng& rng) {
  BraidWord w = random_word(n_strands, length, range, rng);
  const Permutation fix = permutation_of(w).inverse();
  for (int j : transposition_factorization(fix)) {
    w.letters.push_back({std::uint8_t(j), 1});
  }
  return free_reduce(w);
}

/// Diagnostic text form: "b1 B2 b3", capital letter = inverse generator.
/// Used for fixtures and debug dumps only; braid words never cross the wire.
inline std::string to_text(const BraidWord& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << ' ';
    os << (w.letters[i].sign > 0 ? 'b' : 'B') << int(w.letters[i].index);
  }
  return os.str();
}

inline BraidWord from_text(int n_strands, const std::string& text) {
  BraidWord w{n_strands, {}};
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'B')) {
      throw std::invalid_argument("braid text: bad token '" + tok + "'");
    }
    const int idx = std::stoi(tok.substr(1));
    if (idx < 1 || idx >= n_strands) throw std::invalid_argument("braid text: index range");
    w.letters.push_back({std::uint8_t(idx), std::int8_t(tok[0] == 'b' ? 1 : -1)});
  }
  return w;
}

/// Set of conjugates z w_i z^-1 sharing one z; entries flagged pure have
/// identity induced permutation. The TTP builds one set over the lower
/// parabolic indices and one over the upper, so cross-set pairs commute.
struct ConjugateSet {
  std::vector<BraidWord> conjugates;
  std::vector<bool> pure_flags;

  std::size_t size() const { return conjugates.size(); }
  bool has_pure_entry() const {
    for (bool f : pure_flags) {
      if (f) return true;
    }
    return false;
  }
};

}  // namespace ironwood

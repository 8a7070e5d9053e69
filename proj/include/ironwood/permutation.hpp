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

namespace ironwood {

/// Permutation of strands {1..N}. Strand semantics are 1-based to follow
/// braid convention; storage is 0-based (images_[i] is the image of strand
/// i+1, minus one), which is also the serialized form.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    Permutation p;
    p.images_.resize(n);
    for (int i = 0; i < n; ++i) p.images_[i] = std::uint8_t(i);
    return p;
  }

  /// Simple transposition swapping strands i and i+1 (1-based, 1 <= i < n).
  static Permutation transposition(int n, int i) {
    if (i < 1 || i >= n) throw std::invalid_argument("transposition: bad index");
    Permutation p = identity(n);
    std::swap(p.images_[i - 1], p.images_[i]);
    return p;
  }

  static Permutation from_images_zero_based(std::vector<std::uint8_t> images) {
    Permutation p;
    p.images_ = std::move(images);
    if (!p.is_bijection()) throw std::invalid_argument("permutation: not a bijection");
    return p;
  }

  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<std::uint8_t> z(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] < 1 || images[i] > int(images.size())) {
        throw std::invalid_argument("permutation: image out of range");
      }
      z[i] = std::uint8_t(images[i] - 1);
    }
    return from_images_zero_based(std::move(z));
  }

  int size() const { return int(images_.size()); }

  /// Image of strand x (1-based).
  int apply(int x) const { return images_[x - 1] + 1; }

  const std::vector<std::uint8_t>& images_zero_based() const { return images_; }

  std::vector<int> to_one_based() const {
    std::vector<int> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  bool is_bijection() const {
    std::vector<bool> seen(images_.size(), false);
    for (std::uint8_t v : images_) {
      if (v >= images_.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = std::uint8_t(i);
    return p;
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// Left-action composition: (p . r)(x) = p(r(x)). This is the convention
/// forced by the variable-substitution action on Laurent entries; the braid
/// relation tests fail under the opposite choice.
inline Permutation compose(const Permutation& p, const Permutation& r) {
  if (p.size() != r.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<std::uint8_t> out(p.size());
  const auto& pi = p.images_zero_based();
  const auto& ri = r.images_zero_based();
  for (int x = 0; x < p.size(); ++x) out[x] = pi[ri[x]];
  return Permutation::from_images_zero_based(std::move(out));
}

}  // namespace ironwood

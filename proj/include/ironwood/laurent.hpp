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
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ironwood/emult.hpp"
#include "ironwood/field.hpp"
#include "ironwood/permutation.hpp"

namespace ironwood {

/// Sparse multivariate Laurent polynomial in t_1..t_N over Z: a map from
/// exponent vectors (entries may be negative) to exact int64 coefficients.
/// Desk-scale only; coefficient growth limits this to short words and small
/// N, which is all the oracle role requires.
class LaurentPoly {
 public:
  using Exponents = std::vector<std::int16_t>;

  LaurentPoly() = default;
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, std::int64_t c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }

  /// c * t_i^e with i 1-based.
  static LaurentPoly term(int nvars, int i, int e, std::int64_t c) {
    LaurentPoly p(nvars);
    if (c != 0) {
      Exponents ex(nvars, 0);
      ex[i - 1] = std::int16_t(e);
      p.terms_[std::move(ex)] = c;
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }

  bool operator==(const LaurentPoly&) const = default;

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (const auto& [ex, c] : o.terms_) out.add_term(ex, c);
    return out;
  }

  LaurentPoly operator-() const {
    LaurentPoly out(nvars_);
    for (const auto& [ex, c] : terms_) out.terms_[ex] = -c;
    return out;
  }

  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly out(nvars_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        Exponents ex(nvars_);
        for (int k = 0; k < nvars_; ++k) ex[k] = std::int16_t(ea[k] + eb[k]);
        out.add_term(ex, ca * cb);
      }
    }
    return out;
  }

  /// Variable substitution t_j -> t_{sigma(j)} (the left action on entries).
  LaurentPoly permute_vars(const Permutation& sigma) const {
    LaurentPoly out(nvars_);
    for (const auto& [ex, c] : terms_) {
      Exponents moved(nvars_, 0);
      for (int j = 1; j <= nvars_; ++j) moved[sigma.apply(j) - 1] = ex[j - 1];
      out.add_term(moved, c);
    }
    return out;
  }

  /// Evaluate at the T-values, reducing coefficients into F_q.
  FieldElement evaluate(const Field& f, const TValues& tvals) const {
    FieldElement acc = 0;
    for (const auto& [ex, c] : terms_) {
      FieldElement v = f.from_int(c);
      for (int j = 0; j < nvars_; ++j) {
        if (ex[j] != 0) {
          if (tvals.taus[j] == 0) throw std::domain_error("laurent: zero tau");
          v = f.mul(v, f.pow(tvals.taus[j], ex[j]));
        }
      }
      acc = f.add(acc, v);
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ex, c] : terms_) {
      if (!first) os << (c >= 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      first = false;
      const std::int64_t mag = c < 0 ? -c : c;
      bool wrote = false;
      if (mag != 1) {
        os << mag;
        wrote = true;
      }
      for (int j = 0; j < nvars_; ++j) {
        if (ex[j] == 0) continue;
        if (wrote) os << "*";
        os << "t" << (j + 1);
        if (ex[j] != 1) os << "^" << ex[j];
        wrote = true;
      }
      if (!wrote) os << 1;
    }
    return os.str();
  }

 private:
  void add_term(const Exponents& ex, std::int64_t c) {
    if (c == 0) return;
    auto it = terms_.find(ex);
    if (it == terms_.end()) {
      terms_.emplace(ex, c);
    } else if ((it->second += c) == 0) {
      terms_.erase(it);
    }
  }

  int nvars_ = 0;
  std::map<Exponents, std::int64_t> terms_;
};

/// N x N matrix of Laurent polynomials, row-major.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  explicit LaurentMatrix(int n) : n_(n), a_(std::size_t(n) * n, LaurentPoly(n)) {}

  static LaurentMatrix identity(int n) {
    LaurentMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(n, 1);
    return m;
  }

  int n() const { return n_; }
  LaurentPoly& at(int r, int c) { return a_[std::size_t(r) * n_ + c]; }
  const LaurentPoly& at(int r, int c) const { return a_[std::size_t(r) * n_ + c]; }

  bool operator==(const LaurentMatrix&) const = default;

  LaurentMatrix operator*(const LaurentMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("laurent matrix: dimension mismatch");
    LaurentMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < n_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
          if (o.at(k, j).is_zero()) continue;
          out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
        }
      }
    }
    return out;
  }

  LaurentMatrix permute_vars(const Permutation& sigma) const {
    LaurentMatrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i].permute_vars(sigma);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int r = 0; r < n_; ++r) {
      os << "[ ";
      for (int c = 0; c < n_; ++c) {
        if (c) os << " | ";
        os << at(r, c).to_string();
      }
      os << " ]\n";
    }
    return os.str();
  }

 private:
  int n_ = 0;
  std::vector<LaurentPoly> a_;
};

}  // namespace ironwood

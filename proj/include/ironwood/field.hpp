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

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ironwood {

/// An element of F_q stored as its canonical integer representative in [0, q).
/// Elements carry no field context; the Field is always passed explicitly.
using FieldElement = std::uint16_t;

enum class FieldKind : std::uint8_t { binary = 0, prime = 1 };

/// Defining data for a supported field shape: GF(2^m) with 2 <= m <= 16,
/// or a prime field F_p with 3 <= p < 2^16.
struct FieldSpec {
  FieldKind kind = FieldKind::binary;
  std::uint32_t q = 0;        // field cardinality
  std::uint32_t modulus = 0;  // reduction polynomial bitmask (binary) or p (prime)

  static FieldSpec binary_field(unsigned m, std::uint32_t reduction_poly) {
    return FieldSpec{FieldKind::binary, 1u << m, reduction_poly};
  }
  static FieldSpec prime_field(std::uint32_t p) {
    return FieldSpec{FieldKind::prime, p, p};
  }
  /// Default deployment field GF(2^8) with x^8 + x^4 + x^3 + x + 1.
  static FieldSpec gf256() { return binary_field(8, 0x11B); }

  bool operator==(const FieldSpec&) const = default;
};

/// Running tally of elementary field operations, shared by all copies of a
/// Field context. Increments are relaxed atomics; totals are advisory
/// instrumentation, not synchronization.
struct FieldOpCounts {
  std::uint64_t add = 0;
  std::uint64_t sub = 0;
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t neg = 0;

  std::uint64_t total() const { return add + sub + mul + inv + neg; }
  FieldOpCounts operator-(const FieldOpCounts& o) const {
    return {add - o.add, sub - o.sub, mul - o.mul, inv - o.inv, neg - o.neg};
  }
};

namespace detail {

inline int poly_degree(std::uint32_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

// Remainder of polynomial division over GF(2).
inline std::uint32_t poly_mod2(std::uint32_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); a != 0 && da >= dm; da = poly_degree(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

// Exhaustive trial division; adequate for degrees <= 16.
inline bool poly_irreducible2(std::uint32_t m) {
  const int d = poly_degree(m);
  if (d < 1) return false;
  for (std::uint32_t g = 2; poly_degree(g) <= d / 2; ++g) {
    if (poly_mod2(m, g) == 0) return false;
  }
  return true;
}

inline bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

struct OpCounterBlock {
  std::atomic<std::uint64_t> add{0}, sub{0}, mul{0}, inv{0}, neg{0};
};

}  // namespace detail

/// Arithmetic context for F_q. Immutable after construction apart from the
/// shared operation counters; copies alias the same counters. Safe to share
/// across threads.
class Field {
 public:
  explicit Field(const FieldSpec& spec)
      : spec_(spec), ops_(std::make_shared<detail::OpCounterBlock>()) {
    validate_spec();
    if (spec_.kind == FieldKind::binary) build_tables();
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t q() const { return spec_.q; }
  bool is_binary() const { return spec_.kind == FieldKind::binary; }

  FieldElement zero() const { return 0; }
  FieldElement one() const { return 1; }

  FieldElement add(FieldElement a, FieldElement b) const {
    bump(ops_->add);
    if (is_binary()) return a ^ b;
    std::uint32_t s = std::uint32_t(a) + b;
    if (s >= spec_.q) s -= spec_.q;
    return FieldElement(s);
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    bump(ops_->sub);
    if (is_binary()) return a ^ b;
    return FieldElement(a >= b ? a - b : a + spec_.q - b);
  }

  FieldElement neg(FieldElement a) const {
    bump(ops_->neg);
    if (is_binary()) return a;
    return FieldElement(a == 0 ? 0 : spec_.q - a);
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    bump(ops_->mul);
    if (is_binary()) {
      if (a == 0 || b == 0) return 0;
      return exp_[std::size_t(log_[a]) + log_[b]];
    }
    return FieldElement((std::uint32_t(a) * b) % spec_.q);
  }

  FieldElement inv(FieldElement a) const {
    bump(ops_->inv);
    if (a == 0) throw std::domain_error("field: inversion of zero");
    if (is_binary()) return exp_[(spec_.q - 1) - log_[a]];
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = spec_.q, new_r = a;
    while (new_r != 0) {
      const std::int64_t qt = r / new_r;
      t = std::exchange(new_t, t - qt * new_t);
      r = std::exchange(new_r, r - qt * new_r);
    }
    if (t < 0) t += spec_.q;
    return FieldElement(t);
  }

  /// a^e with e possibly negative (requires a != 0 for e < 0).
  FieldElement pow(FieldElement a, std::int64_t e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    FieldElement r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  /// Image of an arbitrary integer under Z -> F_q (used when reducing exact
  /// Laurent coefficients into the field).
  FieldElement from_int(std::int64_t c) const {
    if (is_binary()) return FieldElement(c & 1);
    std::int64_t r = c % std::int64_t(spec_.q);
    if (r < 0) r += spec_.q;
    return FieldElement(r);
  }

  FieldOpCounts op_counts() const {
    return {ops_->add.load(std::memory_order_relaxed),
            ops_->sub.load(std::memory_order_relaxed),
            ops_->mul.load(std::memory_order_relaxed),
            ops_->inv.load(std::memory_order_relaxed),
            ops_->neg.load(std::memory_order_relaxed)};
  }

 private:
  static void bump(std::atomic<std::uint64_t>& c) {
    c.fetch_add(1, std::memory_order_relaxed);
  }

  void validate_spec() {
    if (spec_.kind == FieldKind::binary) {
      const int m = detail::poly_degree(spec_.modulus);
      if (m < 2 || m > 16) {
        throw std::invalid_argument("field: binary degree out of range [2,16]");
      }
      if (spec_.q != (1u << m)) {
        throw std::invalid_argument("field: q does not match modulus degree");
      }
      if (!detail::poly_irreducible2(spec_.modulus)) {
        throw std::invalid_argument("field: reducible binary modulus");
      }
    } else {
      if (spec_.q < 3 || spec_.q >= (1u << 16)) {
        throw std::invalid_argument("field: prime out of range [3, 2^16)");
      }
      if (spec_.modulus != spec_.q) {
        throw std::invalid_argument("field: prime spec requires modulus == q");
      }
      if (!detail::is_prime_u32(spec_.q)) {
        throw std::invalid_argument("field: composite modulus for prime kind");
      }
    }
  }

  // Reference multiply: carry-less shift-and-reduce. The log/antilog tables
  // are an optimization and are checked against this path at construction.
  FieldElement mul_shift_reduce(FieldElement a, FieldElement b) const {
    std::uint32_t acc = 0, x = a;
    const std::uint32_t top = spec_.q;  // bit at position m
    for (std::uint32_t y = b; y != 0; y >>= 1) {
      if (y & 1) acc ^= x;
      x <<= 1;
      if (x & top) x ^= spec_.modulus;
    }
    return FieldElement(acc);
  }

  void build_tables() {
    const std::uint32_t q = spec_.q;
    log_.assign(q, 0);
    exp_.assign(2 * (q - 1), 0);
    // find a multiplicative generator by direct order check
    std::uint32_t g = 2;
    for (;; ++g) {
      if (g >= q) throw std::logic_error("field: no generator found");
      std::uint32_t x = 1;
      std::uint32_t n = 0;
      do {
        x = mul_shift_reduce(FieldElement(x), FieldElement(g));
        ++n;
      } while (x != 1);
      if (n == q - 1) break;
    }
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp_[i] = FieldElement(x);
      exp_[i + (q - 1)] = FieldElement(x);
      log_[x] = FieldElement(i);
      x = mul_shift_reduce(FieldElement(x), FieldElement(g));
    }
    validate_tables();
  }

  void validate_tables() {
    const std::uint32_t q = spec_.q;
    auto table_mul = [&](FieldElement a, FieldElement b) -> FieldElement {
      if (a == 0 || b == 0) return 0;
      return exp_[std::size_t(log_[a]) + log_[b]];
    };
    if (q <= 256) {
      for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
          if (table_mul(FieldElement(a), FieldElement(b)) !=
              mul_shift_reduce(FieldElement(a), FieldElement(b))) {
            throw std::logic_error("field: log table validation failed");
          }
        }
      }
    } else {
      std::uint64_t s = 0x9e3779b97f4a7c15ull;
      for (int i = 0; i < 4096; ++i) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        const FieldElement a = FieldElement((s >> 17) % q);
        const FieldElement b = FieldElement((s >> 41) % q);
        if (table_mul(a, b) != mul_shift_reduce(a, b)) {
          throw std::logic_error("field: log table validation failed");
        }
      }
    }
  }

  FieldSpec spec_;
  std::vector<FieldElement> log_;  // binary fields only
  std::vector<FieldElement> exp_;
  std::shared_ptr<detail::OpCounterBlock> ops_;
};

/// 4-byte field-spec form: kind(1) || m-or-0(1) || low 16 modulus bits or p,
/// big-endian. For binary fields the leading x^m term is implied by m.
inline std::array<std::uint8_t, 4> field_spec_bytes(const FieldSpec& s) {
  std::array<std::uint8_t, 4> out{};
  out[0] = std::uint8_t(s.kind);
  if (s.kind == FieldKind::binary) {
    const int m = detail::poly_degree(s.modulus);
    const std::uint32_t low = s.modulus & ((1u << m) - 1);
    out[1] = std::uint8_t(m);
    out[2] = std::uint8_t(low >> 8);
    out[3] = std::uint8_t(low & 0xff);
  } else {
    out[1] = 0;
    out[2] = std::uint8_t(s.modulus >> 8);
    out[3] = std::uint8_t(s.modulus & 0xff);
  }
  return out;
}

inline FieldSpec field_spec_from_bytes(const std::uint8_t* b) {
  const std::uint32_t word = (std::uint32_t(b[2]) << 8) | b[3];
  if (b[0] == std::uint8_t(FieldKind::binary)) {
    const unsigned m = b[1];
    if (m < 2 || m > 16) throw std::invalid_argument("field spec: bad degree");
    return FieldSpec::binary_field(m, (1u << m) | word);
  }
  if (b[0] == std::uint8_t(FieldKind::prime)) {
    if (b[1] != 0) throw std::invalid_argument("field spec: bad prime form");
    return FieldSpec::prime_field(word);
  }
  throw std::invalid_argument("field spec: unknown kind");
}

}  // namespace ironwood

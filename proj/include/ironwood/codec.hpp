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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ironwood/emult.hpp"
#include "ironwood/field.hpp"
#include "ironwood/hash.hpp"
#include "ironwood/keys.hpp"
#include "ironwood/matrix.hpp"
#include "ironwood/permutation.hpp"

namespace ironwood::wire {

struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what) : std::runtime_error("decode: " + what) {}
};

/// Bytes per serialized field element: one for q <= 256, two otherwise.
/// This matches ceil(log2(q)/8) exactly at q = 256 and over-allocates
/// honestly at smaller non-power-of-two q.
inline int element_bytes(const FieldSpec& spec) { return spec.q <= 256 ? 1 : 2; }

inline int ceil_log2(std::uint32_t v) {
  int bits = 0;
  while ((1u << bits) < v) ++bits;
  return bits;
}

/// Big-endian integers throughout.
class ByteWriter {
 public:
  Bytes take() { return std::move(out_); }
  const Bytes& bytes() const { return out_; }

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(std::uint8_t(v >> 8));
    out_.push_back(std::uint8_t(v));
  }
  void u32(std::uint32_t v) {
    out_.push_back(std::uint8_t(v >> 24));
    out_.push_back(std::uint8_t(v >> 16));
    out_.push_back(std::uint8_t(v >> 8));
    out_.push_back(std::uint8_t(v));
  }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void var_bytes16(std::span<const std::uint8_t> b) {
    if (b.size() > 0xffff) throw std::invalid_argument("encode: blob too long");
    u16(std::uint16_t(b.size()));
    raw(b);
  }
  void var_bytes32(std::span<const std::uint8_t> b) {
    u32(std::uint32_t(b.size()));
    raw(b);
  }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }

  void expect_done() const {
    if (!done()) throw DecodeError("trailing bytes");
  }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const std::uint16_t v = (std::uint16_t(data_[pos_]) << 8) | data_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::span<const std::uint8_t> raw(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  Bytes var_bytes16() {
    const auto n = u16();
    auto s = raw(n);
    return Bytes(s.begin(), s.end());
  }
  Bytes var_bytes32() {
    const auto n = u32();
    auto s = raw(n);
    return Bytes(s.begin(), s.end());
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw DecodeError("truncated input");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

inline void write_element(ByteWriter& w, const FieldSpec& spec, FieldElement e) {
  if (e >= spec.q) throw std::invalid_argument("encode: element out of range");
  if (element_bytes(spec) == 1) {
    w.u8(std::uint8_t(e));
  } else {
    w.u16(e);
  }
}

inline FieldElement read_element(ByteReader& r, const FieldSpec& spec) {
  const std::uint32_t v = element_bytes(spec) == 1 ? r.u8() : r.u16();
  if (v >= spec.q) throw DecodeError("field element out of range");
  return FieldElement(v);
}

inline void write_matrix(ByteWriter& w, const FieldSpec& spec, const Matrix& m) {
  for (FieldElement e : m.data()) write_element(w, spec, e);
}

inline Matrix read_matrix(ByteReader& r, const FieldSpec& spec, int n) {
  Matrix m(n);
  for (auto& e : m.data()) e = read_element(r, spec);
  return m;
}

inline void write_vector(ByteWriter& w, const FieldSpec& spec, const Vector& v) {
  for (FieldElement e : v) write_element(w, spec, e);
}

inline Vector read_vector(ByteReader& r, const FieldSpec& spec, int n) {
  Vector v(std::size_t(n), 0);
  for (auto& e : v) e = read_element(r, spec);
  return v;
}

/// Permutations are packed 0-based at ceil(log2(N)) bits per entry,
/// big-endian bit order, zero-padded to a byte boundary.
inline void write_permutation(ByteWriter& w, const Permutation& p) {
  const int n = p.size();
  const int bits = ceil_log2(std::uint32_t(n));
  std::uint32_t acc = 0;
  int acc_bits = 0;
  for (std::uint8_t img : p.images_zero_based()) {
    acc = (acc << bits) | img;
    acc_bits += bits;
    while (acc_bits >= 8) {
      w.u8(std::uint8_t(acc >> (acc_bits - 8)));
      acc_bits -= 8;
      acc &= (1u << acc_bits) - 1;
    }
  }
  if (acc_bits > 0) w.u8(std::uint8_t(acc << (8 - acc_bits)));
}

inline Permutation read_permutation(ByteReader& r, int n) {
  const int bits = ceil_log2(std::uint32_t(n));
  const std::size_t total = (std::size_t(n) * bits + 7) / 8;
  auto data = r.raw(total);
  std::vector<std::uint8_t> images(n);
  std::uint32_t acc = 0;
  int acc_bits = 0;
  std::size_t byte_pos = 0;
  for (int i = 0; i < n; ++i) {
    while (acc_bits < bits) {
      acc = (acc << 8) | data[byte_pos++];
      acc_bits += 8;
    }
    const std::uint32_t v = (acc >> (acc_bits - bits)) & ((1u << bits) - 1);
    acc_bits -= bits;
    acc &= (1u << acc_bits) - 1;
    if (v >= std::uint32_t(n)) throw DecodeError("permutation image out of range");
    images[i] = std::uint8_t(v);
  }
  // padding bits must be zero for canonicity
  if (acc != 0) throw DecodeError("nonzero permutation padding");
  try {
    return Permutation::from_images_zero_based(std::move(images));
  } catch (const std::invalid_argument&) {
    throw DecodeError("permutation not a bijection");
  }
}

inline std::size_t public_key_encoded_size(const FieldSpec& spec, int n) {
  return std::size_t(n) * n * element_bytes(spec) +
         (std::size_t(n) * ceil_log2(std::uint32_t(n)) + 7) / 8;
}

/// Canonical public-key bytes: matrix row-major, then the packed
/// permutation. At N=16, q=256 this is 264 bytes: exactly
/// N^2 log2(q) + N log2(N) bits.
inline Bytes encode_public_key(const FieldSpec& spec, const PublicKey& pub) {
  ByteWriter w;
  write_matrix(w, spec, pub.matrix);
  write_permutation(w, pub.perm);
  return w.take();
}

inline PublicKey decode_public_key(const FieldSpec& spec, int n,
                                   std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  PublicKey pub;
  pub.matrix = read_matrix(r, spec, n);
  pub.perm = read_permutation(r, n);
  r.expect_done();
  return pub;
}

/// The byte string a certificate signature covers.
inline Bytes certificate_signing_payload(const FieldSpec& spec, const Bytes& device_id,
                                         const PublicKey& pub) {
  ByteWriter w;
  w.var_bytes16(device_id);
  w.raw(encode_public_key(spec, pub));
  return w.take();
}

inline void write_certificate(ByteWriter& w, const FieldSpec& spec, const Certificate& cert) {
  w.var_bytes16(cert.device_id);
  const Bytes pub = encode_public_key(spec, cert.pub);
  w.var_bytes32(pub);
  w.var_bytes16(cert.signer_id);
  w.u8(cert.algorithm);
  w.var_bytes16(cert.signature);
}

inline Certificate read_certificate(ByteReader& r, const FieldSpec& spec, int n) {
  Certificate cert;
  cert.device_id = r.var_bytes16();
  const Bytes pub_bytes = r.var_bytes32();
  if (pub_bytes.size() != public_key_encoded_size(spec, n)) {
    throw DecodeError("embedded public key has wrong size");
  }
  cert.pub = decode_public_key(spec, n, pub_bytes);
  cert.signer_id = r.var_bytes16();
  cert.algorithm = r.u8();
  cert.signature = r.var_bytes16();
  return cert;
}

inline Bytes encode_certificate(const FieldSpec& spec, const Certificate& cert) {
  ByteWriter w;
  write_certificate(w, spec, cert);
  return w.take();
}

inline Certificate decode_certificate(const FieldSpec& spec, int n,
                                      std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Certificate cert = read_certificate(r, spec, n);
  r.expect_done();
  return cert;
}

}  // namespace ironwood::wire

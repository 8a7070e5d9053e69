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

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>

#include "ironwood/codec.hpp"
#include "ironwood/keygen.hpp"
#include "ironwood/protocol.hpp"

namespace ironwood::wire {

// ---------------------------------------------------------------------------
// Message frames: "IRWD" || version || msg_type || length(4, BE) || payload
// ---------------------------------------------------------------------------

enum class MsgType : std::uint8_t {
  cert = 0x01,
  response = 0x02,
  confirm = 0x03,
  params = 0x04,
};

inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kMaxPayload = 1u << 20;  // DoS hygiene
inline constexpr std::size_t kFrameHeaderSize = 10;

struct Frame {
  MsgType type{};
  Bytes payload;
};

inline Bytes encode_frame(MsgType type, std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxPayload) throw std::invalid_argument("frame: payload too large");
  ByteWriter w;
  w.raw(to_bytes("IRWD"));
  w.u8(kWireVersion);
  w.u8(std::uint8_t(type));
  w.u32(std::uint32_t(payload.size()));
  w.raw(payload);
  return w.take();
}

inline Frame decode_frame(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), "IRWD")) throw DecodeError("bad frame magic");
  if (r.u8() != kWireVersion) throw DecodeError("unsupported frame version");
  const std::uint8_t type = r.u8();
  if (type < std::uint8_t(MsgType::cert) || type > std::uint8_t(MsgType::params)) {
    throw DecodeError("unknown message type");
  }
  const std::uint32_t len = r.u32();
  if (len > kMaxPayload) throw DecodeError("frame payload too large");
  auto payload = r.raw(len);
  r.expect_done();
  return Frame{MsgType(type), Bytes(payload.begin(), payload.end())};
}

// ---------------------------------------------------------------------------
// RESPONSE and CONFIRM payloads
// ---------------------------------------------------------------------------

/// Canonical HDResponse bytes: mix matrix row-major, then the s vector.
/// (N^2 + N) elements; 272 bytes at N=16, q=256.
inline Bytes encode_response(const FieldSpec& spec, const protocol::HDResponse& resp) {
  ByteWriter w;
  write_matrix(w, spec, resp.mix);
  write_vector(w, spec, resp.s);
  return w.take();
}

inline protocol::HDResponse decode_response(const FieldSpec& spec, int n,
                                            std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  protocol::HDResponse resp;
  resp.mix = read_matrix(r, spec, n);
  resp.s = read_vector(r, spec, n);
  r.expect_done();
  return resp;
}

/// RESPONSE message payload: response bytes followed by the HD's nonce.
inline Bytes encode_response_message(const FieldSpec& spec, const protocol::HDResponse& resp,
                                     const protocol::Nonce& nonce) {
  ByteWriter w;
  w.raw(encode_response(spec, resp));
  w.raw(nonce);
  return w.take();
}

inline std::pair<protocol::HDResponse, protocol::Nonce> decode_response_message(
    const FieldSpec& spec, int n, std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  protocol::HDResponse resp;
  resp.mix = read_matrix(r, spec, n);
  resp.s = read_vector(r, spec, n);
  protocol::Nonce nonce{};
  const auto nb = r.raw(nonce.size());
  std::copy(nb.begin(), nb.end(), nonce.begin());
  r.expect_done();
  return {std::move(resp), nonce};
}

inline Bytes encode_confirm(protocol::Role role, const protocol::ConfirmationTag& tag) {
  ByteWriter w;
  w.u8(role == protocol::Role::device ? 0x01 : 0x02);
  w.raw(tag.nonce);
  w.raw(tag.tag);
  return w.take();
}

inline std::pair<protocol::Role, protocol::ConfirmationTag> decode_confirm(
    std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const std::uint8_t role = r.u8();
  if (role != 0x01 && role != 0x02) throw DecodeError("bad confirm role");
  protocol::ConfirmationTag tag;
  auto nb = r.raw(tag.nonce.size());
  std::copy(nb.begin(), nb.end(), tag.nonce.begin());
  auto tb = r.raw(tag.tag.size());
  std::copy(tb.begin(), tb.end(), tag.tag.begin());
  r.expect_done();
  return {role == 0x01 ? protocol::Role::device : protocol::Role::hd, tag};
}

// ---------------------------------------------------------------------------
// Key-record files: "IRWK" || version || record-type || payload
// ---------------------------------------------------------------------------

enum class RecordType : std::uint8_t {
  system_params = 0x01,
  hd_secret = 0x02,
  device_key = 0x03,
  certificate = 0x04,
};

inline Bytes encode_record(RecordType type, std::span<const std::uint8_t> payload) {
  ByteWriter w;
  w.raw(to_bytes("IRWK"));
  w.u8(kWireVersion);
  w.u8(std::uint8_t(type));
  w.raw(payload);
  return w.take();
}

inline std::pair<RecordType, Bytes> decode_record(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), "IRWK")) throw DecodeError("bad record magic");
  if (r.u8() != kWireVersion) throw DecodeError("unsupported record version");
  const std::uint8_t type = r.u8();
  if (type < std::uint8_t(RecordType::system_params) ||
      type > std::uint8_t(RecordType::certificate)) {
    throw DecodeError("unknown record type");
  }
  auto payload = r.raw(r.remaining());
  return {RecordType(type), Bytes(payload.begin(), payload.end())};
}

/// System-params payload: field spec (4 bytes) || N (1) || m0 row-major ||
/// TTP generation config (five u16 fields). The config rides along because
/// provisioning re-derives the TTP state from (seed, this payload); its
/// bytes are covered by the fingerprint, so a config mismatch between
/// export-hd and provision-device is caught instead of yielding
/// non-commuting conjugate sets.
inline Bytes system_params_payload(const keygen::SystemParams& params,
                                   const keygen::TtpConfig& config) {
  ByteWriter w;
  w.raw(field_spec_bytes(params.f().spec()));
  w.u8(std::uint8_t(params.n));
  write_matrix(w, params.f().spec(), params.m0);
  w.u16(std::uint16_t(config.conjugates_per_set));
  w.u16(std::uint16_t(config.z_length));
  w.u16(std::uint16_t(config.word_length));
  w.u16(std::uint16_t(config.pure_fraction * 1000.0 + 0.5));  // per-mille
  w.u16(std::uint16_t(config.device_beta_factors));
  return w.take();
}

/// 8-byte pinning fingerprint over the canonical params payload; embedded in
/// every key file so mismatched provisioning is caught before any math runs.
using Fingerprint = std::array<std::uint8_t, 8>;

inline Fingerprint params_fingerprint(std::span<const std::uint8_t> params_payload) {
  const Digest d = sha256(params_payload);
  Fingerprint fp{};
  std::copy(d.begin(), d.begin() + fp.size(), fp.begin());
  return fp;
}

inline Fingerprint params_fingerprint(const keygen::SystemParams& params,
                                      const keygen::TtpConfig& config) {
  return params_fingerprint(system_params_payload(params, config));
}

struct ParamsRecord {
  keygen::SystemParams params;
  keygen::TtpConfig config;
  Fingerprint fingerprint{};
};

inline ParamsRecord decode_system_params(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  const auto spec_bytes = r.raw(4);
  FieldSpec spec;
  try {
    spec = field_spec_from_bytes(spec_bytes.data());
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
  const int n = r.u8();
  if (n < 4 || n > 32 || n % 2 != 0) throw DecodeError("bad strand count");
  ParamsRecord out;
  out.params.n = n;
  out.params.field = std::make_shared<const Field>(spec);
  out.params.m0 = read_matrix(r, spec, n);
  out.config.conjugates_per_set = r.u16();
  out.config.z_length = r.u16();
  out.config.word_length = r.u16();
  out.config.pure_fraction = r.u16() / 1000.0;
  out.config.device_beta_factors = r.u16();
  r.expect_done();
  if (out.config.pure_fraction > 1.0) throw DecodeError("bad pure fraction");
  if (!is_invertible(out.params.f(), out.params.m0)) throw DecodeError("m0 not invertible");
  out.params.m0_powers.reserve(n);
  out.params.m0_powers.push_back(Matrix::identity(n));
  for (int k = 1; k < n; ++k) {
    out.params.m0_powers.push_back(
        matrix_mul(out.params.f(), out.params.m0_powers.back(), out.params.m0));
  }
  out.fingerprint = params_fingerprint(payload);
  return out;
}

inline void write_braid_word(ByteWriter& w, const BraidWord& word) {
  w.u32(std::uint32_t(word.size()));
  for (const auto& l : word.letters) {
    w.u8(std::uint8_t(l.sign > 0 ? l.index : 0x100 - l.index));
  }
}

inline BraidWord read_braid_word(ByteReader& r, int n_strands) {
  const std::uint32_t count = r.u32();
  if (count > (1u << 24)) throw DecodeError("braid word too long");
  BraidWord w{n_strands, {}};
  w.letters.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::int8_t v = std::int8_t(r.u8());
    const int idx = v >= 0 ? v : -v;
    if (v == 0 || idx >= n_strands) throw DecodeError("braid letter out of range");
    w.letters.push_back({std::uint8_t(idx), std::int8_t(v > 0 ? 1 : -1)});
  }
  return w;
}

/// HD-secret payload: embedded params || TTP verification key || T-values ||
/// conjugate set. This is a provisioning file, never a protocol message; it
/// is the only encoder that ever touches braid words or T-values. The
/// verification key rides along because Step 1 has the HD check the TTP's
/// signature on device certificates.
inline Bytes hd_secret_payload(const keygen::SystemParams& params,
                               const keygen::TtpConfig& config,
                               const keygen::HomeDeviceSecret& hd,
                               std::uint8_t verifier_algorithm, const Bytes& verifier_key) {
  ByteWriter w;
  w.var_bytes32(system_params_payload(params, config));
  w.u8(verifier_algorithm);
  w.var_bytes16(verifier_key);
  write_vector(w, params.f().spec(), hd.tvals.taus);
  w.u16(std::uint16_t(hd.alpha_set.size()));
  for (std::size_t i = 0; i < hd.alpha_set.size(); ++i) {
    w.u8(hd.alpha_set.pure_flags[i] ? 1 : 0);
    write_braid_word(w, hd.alpha_set.conjugates[i]);
  }
  return w.take();
}

struct HdSecretFile {
  keygen::SystemParams params;
  keygen::TtpConfig config;
  keygen::HomeDeviceSecret secret;
  std::uint8_t verifier_algorithm = 0;
  Bytes verifier_key;
  Fingerprint fingerprint{};

  /// Certificate verifier from the stored key material.
  HmacSigner make_verifier() const {
    if (verifier_algorithm != HmacSigner::kAlgorithmId) {
      throw DecodeError("unsupported certificate algorithm");
    }
    return HmacSigner(verifier_key, "ironwood-test-ttp");
  }
};

inline HdSecretFile decode_hd_secret(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  const Bytes params_bytes = r.var_bytes32();
  HdSecretFile out;
  ParamsRecord rec = decode_system_params(params_bytes);
  out.params = std::move(rec.params);
  out.config = rec.config;
  out.fingerprint = rec.fingerprint;
  out.verifier_algorithm = r.u8();
  out.verifier_key = r.var_bytes16();
  out.secret.tvals.taus = read_vector(r, out.params.f().spec(), out.params.n);
  out.secret.tvals.validate(out.params.f());
  const std::uint16_t count = r.u16();
  for (std::uint16_t i = 0; i < count; ++i) {
    const bool pure = r.u8() != 0;
    out.secret.alpha_set.pure_flags.push_back(pure);
    out.secret.alpha_set.conjugates.push_back(read_braid_word(r, out.params.n));
    if (pure && !permutation_of(out.secret.alpha_set.conjugates.back()).is_identity()) {
      throw DecodeError("pure-flagged conjugate is not pure");
    }
  }
  r.expect_done();
  return out;
}

/// Device-key payload: embedded params || C_i || C_i^-1 || certificate.
inline Bytes device_key_payload(const keygen::SystemParams& params,
                                const keygen::TtpConfig& config,
                                const keygen::DeviceKeyMaterial& material) {
  ByteWriter w;
  w.var_bytes32(system_params_payload(params, config));
  write_matrix(w, params.f().spec(), material.c_matrix);
  write_matrix(w, params.f().spec(), material.c_inverse);
  w.var_bytes32(encode_certificate(params.f().spec(), material.cert));
  return w.take();
}

struct DeviceKeyFile {
  keygen::SystemParams params;
  keygen::TtpConfig config;
  keygen::DeviceKeyMaterial material;
  Fingerprint fingerprint{};
};

inline DeviceKeyFile decode_device_key(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  const Bytes params_bytes = r.var_bytes32();
  DeviceKeyFile out;
  ParamsRecord rec = decode_system_params(params_bytes);
  out.params = std::move(rec.params);
  out.config = rec.config;
  out.fingerprint = rec.fingerprint;
  const FieldSpec& spec = out.params.f().spec();
  out.material.c_matrix = read_matrix(r, spec, out.params.n);
  out.material.c_inverse = read_matrix(r, spec, out.params.n);
  const Bytes cert_bytes = r.var_bytes32();
  out.material.cert = decode_certificate(spec, out.params.n, cert_bytes);
  r.expect_done();
  const Matrix prod = matrix_mul(out.params.f(), out.material.c_matrix, out.material.c_inverse);
  if (!(prod == Matrix::identity(out.params.n))) {
    throw DecodeError("device key: C * C^-1 != Id");
  }
  return out;
}

}  // namespace ironwood::wire

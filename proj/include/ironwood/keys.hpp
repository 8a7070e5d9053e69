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
#include <memory>
#include <span>
#include <string>

#include "ironwood/hash.hpp"
#include "ironwood/matrix.hpp"
#include "ironwood/permutation.hpp"

namespace ironwood {

/// Device public key Pub_i = (C_i M_i, sigma_i).
struct PublicKey {
  Matrix matrix;
  Permutation perm;

  bool operator==(const PublicKey&) const = default;
};

/// TTP-issued certificate binding a device id to its public key. The
/// signature covers the canonical encoding of (device_id, pub); the
/// algorithm byte is reserved for real signature schemes.
struct Certificate {
  PublicKey pub;
  Bytes device_id;
  Bytes signer_id;
  std::uint8_t algorithm = 0;
  Bytes signature;

  bool operator==(const Certificate&) const = default;
};

/// Pluggable digital signature primitive. The protocol treats signing as an
/// external building block; any scheme with this shape slots in.
class SignatureProvider {
 public:
  virtual ~SignatureProvider() = default;
  virtual Bytes sign(std::span<const std::uint8_t> message) const = 0;
  virtual bool verify(std::span<const std::uint8_t> message,
                      std::span<const std::uint8_t> signature) const = 0;
  virtual Bytes signer_id() const = 0;
  virtual std::uint8_t algorithm_id() const = 0;
};

/// Keyed-hash stand-in signer for tests and demos. NOT FOR PRODUCTION: the
/// verification key equals the signing key, so anyone who can verify can
/// also forge. Real deployments plug an asymmetric scheme into the provider
/// interface instead.
class HmacSigner final : public SignatureProvider {
 public:
  static constexpr std::uint8_t kAlgorithmId = 0x01;

  HmacSigner(Bytes key, std::string signer_name)
      : key_(std::move(key)), signer_name_(std::move(signer_name)) {}

  Bytes sign(std::span<const std::uint8_t> message) const override {
    const Digest d = hmac_sha256(key_, message);
    return Bytes(d.begin(), d.end());
  }

  bool verify(std::span<const std::uint8_t> message,
              std::span<const std::uint8_t> signature) const override {
    const Digest d = hmac_sha256(key_, message);
    return digests_equal(d, signature);
  }

  Bytes signer_id() const override { return to_bytes(signer_name_); }
  std::uint8_t algorithm_id() const override { return kAlgorithmId; }

 private:
  Bytes key_;
  std::string signer_name_;
};

}  // namespace ironwood

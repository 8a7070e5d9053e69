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

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/params.h>

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ironwood {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

inline Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> msg) {
  struct MacHandle {
    EVP_MAC* mac = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
    ~MacHandle() { EVP_MAC_free(mac); }
  };
  struct CtxHandle {
    EVP_MAC_CTX* ctx = nullptr;
    ~CtxHandle() { EVP_MAC_CTX_free(ctx); }
  };
  static const MacHandle handle;
  CtxHandle c{EVP_MAC_CTX_new(handle.mac)};
  char digest_name[] = "SHA256";
  const OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
      OSSL_PARAM_construct_end()};
  Digest out{};
  std::size_t len = 0;
  if (c.ctx == nullptr || EVP_MAC_init(c.ctx, key.data(), key.size(), params) != 1 ||
      EVP_MAC_update(c.ctx, msg.data(), msg.size()) != 1 ||
      EVP_MAC_final(c.ctx, out.data(), &len, out.size()) != 1 || len != out.size()) {
    throw std::runtime_error("hmac-sha256 failed");
  }
  return out;
}

/// Timing-safe comparison for MACs and confirmation tags.
inline bool digests_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) return false;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

inline void append_bytes(Bytes& out, std::span<const std::uint8_t> more) {
  out.insert(out.end(), more.begin(), more.end());
}

inline void append_bytes(Bytes& out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
}

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace ironwood

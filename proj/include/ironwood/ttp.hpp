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
#include <string>

#include "ironwood/hash.hpp"
#include "ironwood/keygen.hpp"

namespace ironwood::keygen {

/// Complete TTP state. Everything here is re-derivable from the master seed,
/// so the TTP persists nothing: the seed IS the TTP secret. Issuance for a
/// given device id is deterministic, which also makes provisioning
/// reproducible for fixtures.
struct TtpState {
  SystemParams params;
  ConjugateSet alpha_set;   // for the HD
  ConjugateSet gamma_set;   // consumed when issuing device keys
  TValues tvals;
  HmacSigner signer;
  TtpConfig config;
};

namespace detail {

inline Bytes seed_bytes(std::uint64_t seed) {
  Bytes b(8);
  for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(seed >> (8 * (7 - i)));
  return b;
}

inline std::uint64_t digest_to_u64(const Digest& d) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

}  // namespace detail

inline Bytes ttp_signing_key(std::uint64_t seed) {
  Bytes input = to_bytes("ironwood-ttp-signing-key");
  append_bytes(input, detail::seed_bytes(seed));
  const Digest d = sha256(input);
  return Bytes(d.begin(), d.end());
}

/// Derives params, both conjugate sets, T-values and the signing key from
/// the master seed in a fixed order.
inline TtpState derive_ttp(std::uint64_t seed, int n, const FieldSpec& spec,
                           const TtpConfig& config = {}) {
  Rng rng(seed);
  TtpState state{gen_system_params(n, spec, rng),
                 {},
                 {},
                 {},
                 HmacSigner(ttp_signing_key(seed), "ironwood-test-ttp"),
                 config};
  auto sets = gen_conjugate_sets(state.params, config, rng);
  state.alpha_set = std::move(sets.first);
  state.gamma_set = std::move(sets.second);
  state.tvals = gen_tvalues(state.params, rng);
  return state;
}

inline HomeDeviceSecret hd_secret_of(const TtpState& state) {
  return HomeDeviceSecret{state.alpha_set, state.tvals};
}

/// Per-device issuance rng, bound to (seed, device id) so re-provisioning a
/// device is byte-identical while distinct devices diverge.
inline Rng device_issue_rng(std::uint64_t seed, const Bytes& device_id) {
  Bytes input = to_bytes("ironwood-device-issue");
  append_bytes(input, detail::seed_bytes(seed));
  append_bytes(input, device_id);
  return Rng(detail::digest_to_u64(sha256(input)));
}

inline DeviceKeyMaterial provision_device(const TtpState& state, std::uint64_t seed,
                                          const Bytes& device_id) {
  Rng rng = device_issue_rng(seed, device_id);
  return gen_device_key(state.params, state.gamma_set, state.tvals, device_id,
                        state.config.device_beta_factors, state.signer, rng);
}

}  // namespace ironwood::keygen

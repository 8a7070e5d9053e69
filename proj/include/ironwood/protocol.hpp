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
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ironwood/codec.hpp"
#include "ironwood/hash.hpp"
#include "ironwood/keygen.hpp"

namespace ironwood::protocol {

using SessionKey = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 16>;

/// HD ephemeral state for one handshake. C, C' are nonzero m0-polynomials
/// (so they commute with every device key and with each other); beta and
/// beta_prime share the induced permutation sigma. Single-use: consumed by
/// hd_compute_response.
struct HDSession {
  Matrix c;
  Matrix c_prime;
  BraidWord beta;
  BraidWord beta_prime;
  Permutation sigma;
  Matrix cm;    // matrix of (C, Id) * (beta, sigma)
  Matrix cpmp;  // matrix of (C', Id) * (beta_prime, sigma)
  EmultStats gen_cost;
  bool consumed = false;
};

/// What the HD transmits in Step 7: the mix matrix C'M'M^-1 C^-1 and the
/// (N/2)th column s of Y.
struct HDResponse {
  Matrix mix;
  Vector s;

  bool operator==(const HDResponse&) const = default;
};

/// The agreed column vector s'.
struct SharedSecret {
  Vector s_prime;

  bool operator==(const SharedSecret&) const = default;
};

struct ConfirmationTag {
  Nonce nonce{};
  std::array<std::uint8_t, 32> tag{};

  bool operator==(const ConfirmationTag&) const = default;
};

enum class Role { hd, device };

struct SessionConfig {
  int beta_factors = 40;       // conjugate factors in beta
  int extra_pure_factors = 12; // pure-conjugate insertions distinguishing beta'
};

/// Steps 2-4: ephemerals C, C', the braids beta and beta', and the two
/// cached E-Multiplications. beta' reuses beta's factor sequence with extra
/// pure-flagged conjugates interleaved at random positions, which forces
/// sigma_beta' = sigma_beta and leaves beta' longer than beta.
inline HDSession hd_new_session(const keygen::HomeDeviceSecret& hd,
                                const keygen::SystemParams& params, const SessionConfig& cfg,
                                Rng& rng) {
  const Field& f = params.f();
  hd.tvals.validate(f);
  if (cfg.extra_pure_factors > 0 && !hd.alpha_set.has_pure_entry()) {
    throw std::invalid_argument("session: conjugate set has no pure entries to interleave");
  }
  const auto& entries = hd.alpha_set.conjugates;
  if (entries.empty() || cfg.beta_factors < 1) {
    throw std::invalid_argument("session: empty conjugate set or no factors");
  }
  const int n = params.n;

  std::vector<std::size_t> pure_indices;
  for (std::size_t i = 0; i < hd.alpha_set.size(); ++i) {
    if (hd.alpha_set.pure_flags[i]) pure_indices.push_back(i);
  }

  // factor sequence for beta; beta' = same sequence + pure insertions
  struct Factor {
    std::size_t index;
    bool inverted;
  };
  std::vector<Factor> factors(std::size_t(cfg.beta_factors));
  for (auto& fac : factors) {
    fac = {uniform_below(rng, entries.size()), coin_flip(rng)};
  }
  std::vector<Factor> factors_prime = factors;
  for (int k = 0; k < cfg.extra_pure_factors; ++k) {
    const Factor pure{pure_indices[uniform_below(rng, pure_indices.size())], coin_flip(rng)};
    const std::size_t pos = uniform_below(rng, factors_prime.size() + 1);
    factors_prime.insert(factors_prime.begin() + std::ptrdiff_t(pos), pure);
  }
  auto build = [&](const std::vector<Factor>& fs) {
    BraidWord acc{n, {}};
    for (const auto& fac : fs) {
      const BraidWord& e = entries[fac.index];
      acc = concat(acc, fac.inverted ? inverse(e) : e);
    }
    return free_reduce(acc);
  };

  HDSession s;
  s.beta = build(factors);
  s.beta_prime = build(factors_prime);
  s.sigma = permutation_of(s.beta);
  if (permutation_of(s.beta_prime) != s.sigma) {
    throw std::logic_error("session: beta' permutation diverged");  // unreachable by construction
  }
  s.c = keygen::sample_m0_polynomial(params, rng).second;
  s.c_prime = keygen::sample_m0_polynomial(params, rng).second;
  s.cm = emult(f, {s.c, Permutation::identity(n)}, s.beta, hd.tvals, &s.gen_cost).matrix;
  s.cpmp =
      emult(f, {s.c_prime, Permutation::identity(n)}, s.beta_prime, hd.tvals, &s.gen_cost).matrix;
  return s;
}

enum class ValidationFailure {
  none,
  certificate,      // TTP signature did not verify
  key_mismatch,     // presented key differs from the certified one
  not_invertible,   // public matrix is singular
  too_many_zeros,   // zero fraction above policy threshold
  zero_row_or_col,  // an all-zero row or column
  bad_permutation,  // not a bijection on {1..N}
};

inline std::string_view to_string(ValidationFailure v) {
  switch (v) {
    case ValidationFailure::none: return "ok";
    case ValidationFailure::certificate: return "certificate signature";
    case ValidationFailure::key_mismatch: return "key differs from certificate";
    case ValidationFailure::not_invertible: return "singular public matrix";
    case ValidationFailure::too_many_zeros: return "too many zero entries";
    case ValidationFailure::zero_row_or_col: return "all-zero row or column";
    case ValidationFailure::bad_permutation: return "invalid permutation";
  }
  return "unknown";
}

struct ValidationPolicy {
  double max_zero_fraction = 0.25;
  bool reject_zero_row_or_col = true;
};

struct ValidationResult {
  ValidationFailure failure = ValidationFailure::none;

  explicit operator bool() const { return failure == ValidationFailure::none; }
};

/// Invalid-public-key defense: the certificate must verify, the matrix must
/// be invertible and sufficiently non-zero, and the permutation must be a
/// bijection. The zero-entry policy blocks structured matrices that would
/// let linear algebra peel information from the HD's response.
inline ValidationResult validate_public_key(const Field& f, const PublicKey& pub,
                                            const Certificate& cert,
                                            const SignatureProvider& verifier,
                                            const ValidationPolicy& policy = {}) {
  if (!keygen::verify_cert(f.spec(), cert, verifier)) {
    return {ValidationFailure::certificate};
  }
  if (!(pub == cert.pub)) return {ValidationFailure::key_mismatch};
  const int n = pub.matrix.n();
  if (pub.perm.size() != n || !pub.perm.is_bijection()) {
    return {ValidationFailure::bad_permutation};
  }
  int zeros = 0;
  for (FieldElement e : pub.matrix.data()) zeros += (e == 0);
  if (double(zeros) > policy.max_zero_fraction * double(n) * double(n)) {
    return {ValidationFailure::too_many_zeros};
  }
  if (policy.reject_zero_row_or_col) {
    for (int i = 0; i < n; ++i) {
      bool row_zero = true, col_zero = true;
      for (int j = 0; j < n; ++j) {
        row_zero = row_zero && pub.matrix.at(i, j) == 0;
        col_zero = col_zero && pub.matrix.at(j, i) == 0;
      }
      if (row_zero || col_zero) return {ValidationFailure::zero_row_or_col};
    }
  }
  if (!is_invertible(f, pub.matrix)) return {ValidationFailure::not_invertible};
  return {};
}

struct HDExchange {
  HDResponse response;
  SharedSecret secret;
  EmultStats emult_cost;
};

/// Steps 5-7. Computes Y and Y' by E-Multiplying the blinded public key by
/// beta and beta', takes their (N/2)th columns (1-indexed) as s and s', and
/// forms the response mix (C'M')(CM)^-1 from the cached Step-4 products --
/// algebraically C'M'M^-1C^-1 with a single inversion. Consumes the session.
inline HDExchange hd_compute_response(HDSession& session, const PublicKey& pub,
                                      const keygen::SystemParams& params, const TValues& tvals) {
  if (session.consumed) throw std::logic_error("session: already consumed (single-use)");
  session.consumed = true;
  const Field& f = params.f();
  const int n = params.n;
  const int secret_col = n / 2 - 1;  // 0-based slot of the 1-indexed (N/2)th column

  HDExchange out;
  const EMultState y =
      emult(f, {matrix_mul(f, session.c, pub.matrix), pub.perm}, session.beta, tvals,
            &out.emult_cost);
  const EMultState y_prime =
      emult(f, {matrix_mul(f, session.c_prime, pub.matrix), pub.perm}, session.beta_prime, tvals,
            &out.emult_cost);

  Vector s(std::size_t(n), 0), s_prime(std::size_t(n), 0);
  for (int r = 0; r < n; ++r) {
    s[r] = y.matrix.at(r, secret_col);
    s_prime[r] = y_prime.matrix.at(r, secret_col);
  }
  out.response = HDResponse{matrix_mul(f, session.cpmp, matrix_inverse(f, session.cm)),
                            std::move(s)};
  out.secret = SharedSecret{std::move(s_prime)};
  return out;
}

/// Step 8, the device side: s' = C_i (C'M'M^-1C^-1) C_i^-1 . s as three
/// matrix-vector products right to left. No E-Multiplication happens here;
/// this is the entire device-side cost.
inline SharedSecret device_compute_secret(const Field& f, const keygen::DeviceKeyMaterial& key,
                                          const HDResponse& response) {
  Vector v = matrix_vec(f, key.c_inverse, response.s);
  v = matrix_vec(f, response.mix, v);
  v = matrix_vec(f, key.c_matrix, v);
  return SharedSecret{std::move(v)};
}

/// Step 9 key schedule: SHA-256 over a domain tag, the transcript hash
/// (CERT and RESPONSE frames exactly as framed), and the canonical s'
/// encoding.
inline SessionKey derive_session_key(const FieldSpec& spec, const SharedSecret& secret,
                                     const Digest& transcript_hash) {
  Bytes input = to_bytes("ironwood-v1-kdf");
  append_bytes(input, transcript_hash);
  wire::ByteWriter w;
  wire::write_vector(w, spec, secret.s_prime);
  append_bytes(input, w.bytes());
  return sha256(input);
}

inline Digest transcript_hash(std::span<const std::uint8_t> cert_frame,
                              std::span<const std::uint8_t> response_frame) {
  Bytes t;
  append_bytes(t, cert_frame);
  append_bytes(t, response_frame);
  return sha256(t);
}

inline std::string_view role_label(Role role) {
  return role == Role::device ? "dev-confirm" : "hd-confirm";
}

/// Challenge/response confirmation: tag = HMAC-SHA-256(key, nonce || label).
/// The device answers the HD's nonce first; mutual confirmation is optional
/// by policy.
inline ConfirmationTag confirm_exchange(Role role, const SessionKey& key, const Nonce& nonce) {
  Bytes msg(nonce.begin(), nonce.end());
  append_bytes(msg, role_label(role));
  ConfirmationTag out;
  out.nonce = nonce;
  out.tag = hmac_sha256(key, msg);
  return out;
}

inline bool check_confirmation(Role role, const SessionKey& key, const ConfirmationTag& tag) {
  const ConfirmationTag expected = confirm_exchange(role, key, tag.nonce);
  return digests_equal(expected.tag, tag.tag);
}

/// Brute-force security levels from the parameter sizes, as log2 values
/// rounded to three decimals. matrix/exchanged-key levels are q^N, T-values
/// (q-2)^N, private braids at least (L/2)^(N-1); the overall level is the
/// min of the last two. minimal_braid_length is the smallest L meeting
/// L >= 2(q-2)^(1-1/N), rounded to the nearest integer.
struct SecurityLevelReport {
  double matrix_secret_bits = 0;
  double tvalue_bits = 0;
  double exchanged_key_bits = 0;
  std::optional<double> braid_bits;
  std::optional<double> overall_bits;
  long long minimal_braid_length = 0;
};

inline double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

inline SecurityLevelReport security_level(std::uint32_t q, int n,
                                          std::optional<long long> braid_length = {}) {
  if (q < 4 || n < 2) throw std::invalid_argument("security_level: need q >= 4, N >= 2");
  if (braid_length && *braid_length < 2) {
    throw std::invalid_argument("security_level: need L >= 2");
  }
  SecurityLevelReport r;
  r.matrix_secret_bits = round3(n * std::log2(double(q)));
  r.tvalue_bits = round3(n * std::log2(double(q - 2)));
  r.exchanged_key_bits = r.matrix_secret_bits;
  if (braid_length) {
    r.braid_bits = round3((n - 1) * std::log2(double(*braid_length) / 2.0));
    r.overall_bits = round3(std::min(r.tvalue_bits, *r.braid_bits));
  }
  r.minimal_braid_length =
      std::llround(2.0 * std::pow(double(q - 2), 1.0 - 1.0 / double(n)));
  return r;
}

}  // namespace ironwood::protocol

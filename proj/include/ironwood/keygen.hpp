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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ironwood/braid.hpp"
#include "ironwood/codec.hpp"
#include "ironwood/emult.hpp"
#include "ironwood/field.hpp"
#include "ironwood/keys.hpp"
#include "ironwood/matrix.hpp"
#include "ironwood/rng.hpp"

namespace ironwood::keygen {

/// Public system parameters: B_N for even N, the field, and m0 with its
/// cached powers. m0 is the companion matrix of an irreducible degree-N
/// polynomial, so F_q[m0] is a field and every nonzero m0-polynomial is
/// invertible.
struct SystemParams {
  int n = 0;
  std::shared_ptr<const Field> field;
  Matrix m0;
  std::vector<Matrix> m0_powers;  // m0^0 .. m0^(N-1)

  const Field& f() const { return *field; }
};

/// HD-side secret material: the first conjugate set and the T-values.
struct HomeDeviceSecret {
  ConjugateSet alpha_set;
  TValues tvals;
};

/// Device-side secret material. Deliberately contains no T-values, no
/// conjugate sets, and nothing derived from any other device's key, so a
/// compromised device exposes only itself.
struct DeviceKeyMaterial {
  Matrix c_matrix;
  Matrix c_inverse;
  Certificate cert;
};

struct TtpConfig {
  int conjugates_per_set = 32;   // r
  int z_length = 64;             // letters in the shared conjugator
  int word_length = 64;          // letters in each alpha_i / gamma_i
  double pure_fraction = 0.5;    // portion of alpha_i built as pure braids
  int device_beta_factors = 40;  // conjugate factors in each issued beta_i
};

namespace detail {

// Dense polynomial over F_q, index = degree. Used only to find an
// irreducible characteristic polynomial for m0.
using Poly = std::vector<FieldElement>;

inline Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& mod) {
  const std::size_t n = mod.size() - 1;  // mod is monic of degree n
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
    }
  }
  for (std::size_t d = prod.size(); d-- > n;) {
    const FieldElement lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      prod[d - n + k] = f.sub(prod[d - n + k], f.mul(lead, mod[k]));
    }
  }
  prod.resize(n);
  return prod;
}

inline Poly poly_powmod_q(const Field& f, Poly base, const Poly& mod) {
  // base^q via square-and-multiply on the field cardinality
  Poly result{1};
  result.resize(mod.size() - 1, 0);
  std::uint32_t e = f.q();
  while (e > 0) {
    if (e & 1) result = poly_mulmod(f, result, base, mod);
    base = poly_mulmod(f, base, base, mod);
    e >>= 1;
  }
  return result;
}

inline bool poly_is_zero(const Poly& p) {
  for (FieldElement c : p) {
    if (c != 0) return false;
  }
  return true;
}

inline int poly_deg(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) return int(i);
  }
  return -1;
}

inline Poly poly_gcd(const Field& f, Poly a, Poly b) {
  while (!poly_is_zero(b)) {
    // a mod b
    const int db = poly_deg(b);
    const FieldElement lead_inv = f.inv(b[db]);
    for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
      const FieldElement c = f.mul(a[da], lead_inv);
      for (int k = 0; k <= db; ++k) {
        a[da - db + k] = f.sub(a[da - db + k], f.mul(c, b[k]));
      }
    }
    std::swap(a, b);
  }
  a.resize(std::size_t(poly_deg(a) + 1));
  return a;
}

/// Rabin irreducibility test for a monic degree-N polynomial over F_q.
inline bool poly_irreducible(const Field& f, const Poly& mod) {
  const int n = int(mod.size()) - 1;
  Poly x{0, 1};
  x.resize(n, 0);
  if (n == 1) return true;
  // x^(q^k) mod f for k = 1..n by iterating the q-power map
  Poly xq = x;
  std::vector<int> prime_divisors;
  for (int d = 2, rem = n; d <= rem; ++d) {
    if (rem % d == 0) {
      prime_divisors.push_back(d);
      while (rem % d == 0) rem /= d;
    }
  }
  for (int k = 1; k <= n; ++k) {
    xq = poly_powmod_q(f, xq, mod);
    for (int d : prime_divisors) {
      if (k == n / d) {
        // gcd(x^(q^(n/d)) - x, f) must be trivial
        Poly diff = xq;
        diff.resize(std::max(diff.size(), x.size()), 0);
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = f.sub(diff[i], x[i]);
        const Poly g = poly_gcd(f, diff, mod);
        if (poly_deg(g) != 0) return false;
      }
    }
  }
  // x^(q^n) == x mod f
  Poly diff = xq;
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = f.sub(diff[i], x[i]);
  return poly_is_zero(diff);
}

inline Matrix companion_matrix(const Field& f, const Poly& monic) {
  const int n = int(monic.size()) - 1;
  Matrix m(n);
  for (int r = 1; r < n; ++r) m.at(r, r - 1) = 1;
  for (int r = 0; r < n; ++r) m.at(r, n - 1) = f.neg(monic[r]);
  return m;
}

}  // namespace detail

/// System parameter generation: m0 is the companion matrix of a randomly
/// drawn monic irreducible polynomial of degree N over F_q.
inline SystemParams gen_system_params(int n, const FieldSpec& spec, Rng& rng) {
  if (n < 4 || n > 32 || (n % 2) != 0) {
    throw std::invalid_argument("params: N must be even, 4 <= N <= 32");
  }
  SystemParams params;
  params.n = n;
  params.field = std::make_shared<const Field>(spec);
  const Field& f = params.f();

  detail::Poly p(std::size_t(n) + 1, 0);
  p[n] = 1;
  do {
    for (int i = 0; i < n; ++i) p[i] = FieldElement(uniform_below(rng, f.q()));
    if (p[0] == 0) p[0] = 1;  // constant term must be nonzero
  } while (!detail::poly_irreducible(f, p));

  params.m0 = detail::companion_matrix(f, p);
  params.m0_powers.reserve(n);
  params.m0_powers.push_back(Matrix::identity(n));
  for (int k = 1; k < n; ++k) {
    params.m0_powers.push_back(matrix_mul(f, params.m0_powers.back(), params.m0));
  }
  return params;
}

/// Uniform nonzero coefficient vector and the matrix sum(c_k m0^k). All
/// outputs commute pairwise and are invertible.
inline std::pair<Vector, Matrix> sample_m0_polynomial(const SystemParams& params, Rng& rng) {
  const Field& f = params.f();
  Vector coeffs(std::size_t(params.n), 0);
  for (;;) {
    bool nonzero = false;
    for (auto& c : coeffs) {
      c = FieldElement(uniform_below(rng, f.q()));
      nonzero = nonzero || c != 0;
    }
    if (nonzero) break;
  }
  Matrix m(params.n);
  for (int k = 0; k < params.n; ++k) {
    if (coeffs[k] == 0) continue;
    m = matrix_add(f, m, scalar_mul(f, coeffs[k], params.m0_powers[k]));
  }
  return {std::move(coeffs), std::move(m)};
}

/// N uniform draws from F_q \ {0, 1}.
inline TValues gen_tvalues(const SystemParams& params, Rng& rng) {
  return random_tvalues(params.f(), params.n, rng);
}

/// The two commuting conjugate sets. The alpha_i live on the lower parabolic
/// indices [1, N/2-1], the gamma_i on the upper [N/2+1, N-1]; the index gap
/// of 2 makes every cross pair commute before (hence after) conjugation by
/// the shared z. The first ceil(r * pure_fraction) alpha entries are pure.
inline std::pair<ConjugateSet, ConjugateSet> gen_conjugate_sets(const SystemParams& params,
                                                                const TtpConfig& cfg, Rng& rng) {
  if (cfg.conjugates_per_set < 2) throw std::invalid_argument("conjugates: r must be >= 2");
  if (cfg.z_length < 1 || cfg.word_length < 1) {
    throw std::invalid_argument("conjugates: degenerate lengths");
  }
  if (cfg.pure_fraction < 0.0 || cfg.pure_fraction > 1.0) {
    throw std::invalid_argument("conjugates: pure_fraction out of [0,1]");
  }
  const int n = params.n;
  const IndexRange lower{1, n / 2 - 1};
  const IndexRange upper{n / 2 + 1, n - 1};
  const BraidWord z = random_word(n, std::size_t(cfg.z_length), {1, n - 1}, rng);

  int pure_count = int(cfg.conjugates_per_set * cfg.pure_fraction + 0.5);
  if (cfg.pure_fraction > 0.0 && pure_count == 0) pure_count = 1;

  ConjugateSet alpha, gamma;
  for (int i = 0; i < cfg.conjugates_per_set; ++i) {
    const bool pure = i < pure_count;
    const BraidWord w = pure ? make_pure_word(n, std::size_t(cfg.word_length), lower, rng)
                             : random_word(n, std::size_t(cfg.word_length), lower, rng);
    alpha.conjugates.push_back(conjugate(z, w));
    alpha.pure_flags.push_back(pure);
  }
  for (int i = 0; i < cfg.conjugates_per_set; ++i) {
    gamma.conjugates.push_back(
        conjugate(z, random_word(n, std::size_t(cfg.word_length), upper, rng)));
    gamma.pure_flags.push_back(false);
  }
  return {std::move(alpha), std::move(gamma)};
}

/// Random product of conjugate-set entries and their inverses, freely
/// reduced. Factors are drawn with replacement.
inline BraidWord random_conjugate_product(const ConjugateSet& set, int factors, Rng& rng) {
  if (set.size() == 0 || factors < 1) {
    throw std::invalid_argument("conjugate product: empty set or no factors");
  }
  BraidWord acc{set.conjugates.front().n_strands, {}};
  for (int k = 0; k < factors; ++k) {
    const auto& entry = set.conjugates[uniform_below(rng, set.size())];
    acc = concat(acc, coin_flip(rng) ? inverse(entry) : entry);
  }
  return free_reduce(acc);
}

/// Full issuance record; the TTP-internal braid and coefficients are only
/// surfaced for the all-secrets test harness. Shipped material is the
/// DeviceKeyMaterial alone.
struct DeviceIssuance {
  DeviceKeyMaterial material;
  BraidWord beta;     // beta_i, never leaves the TTP
  Vector c_coeffs;    // c_{k,i}
  PublicKey pub;
};

inline DeviceIssuance gen_device_key_full(const SystemParams& params, const ConjugateSet& gamma,
                                          const TValues& tvals, const Bytes& device_id,
                                          int beta_factors, const SignatureProvider& signer,
                                          Rng& rng) {
  const Field& f = params.f();
  DeviceIssuance out;
  out.beta = random_conjugate_product(gamma, beta_factors, rng);
  auto [coeffs, c_matrix] = sample_m0_polynomial(params, rng);
  out.c_coeffs = std::move(coeffs);

  const EMultState pub_state =
      emult(f, {c_matrix, Permutation::identity(params.n)}, out.beta, tvals);
  out.pub = PublicKey{pub_state.matrix, pub_state.perm};

  Certificate cert;
  cert.pub = out.pub;
  cert.device_id = device_id;
  cert.signer_id = signer.signer_id();
  cert.algorithm = signer.algorithm_id();
  cert.signature = signer.sign(wire::certificate_signing_payload(f.spec(), device_id, out.pub));

  out.material =
      DeviceKeyMaterial{c_matrix, matrix_inverse(f, c_matrix), std::move(cert)};
  return out;
}

/// Step 0 of the protocol proper: what the TTP writes into device i. The
/// TTP retains nothing per-device.
inline DeviceKeyMaterial gen_device_key(const SystemParams& params, const ConjugateSet& gamma,
                                        const TValues& tvals, const Bytes& device_id,
                                        int beta_factors, const SignatureProvider& signer,
                                        Rng& rng) {
  return gen_device_key_full(params, gamma, tvals, device_id, beta_factors, signer, rng)
      .material;
}

/// True iff the signature verifies over the canonical (device_id, pub)
/// encoding. A bad signature is a protocol outcome, not an exception.
inline bool verify_cert(const FieldSpec& spec, const Certificate& cert,
                        const SignatureProvider& verifier) {
  return verifier.verify(wire::certificate_signing_payload(spec, cert.device_id, cert.pub),
                         cert.signature);
}

}  // namespace ironwood::keygen

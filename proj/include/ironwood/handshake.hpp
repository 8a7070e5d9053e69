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

#include <functional>
#include <string>

#include "ironwood/protocol.hpp"
#include "ironwood/wire.hpp"

namespace ironwood::protocol {

/// Transport abstraction: moves whole frames. In-process queues and TCP
/// sockets both fit; tests interpose here to tamper with frames.
struct Channel {
  std::function<void(const Bytes&)> send;
  std::function<Bytes()> recv;
};

struct HandshakeOptions {
  bool mutual_confirmation = false;
  bool params_greeting = false;  // HD announces params; device checks the pin
  Bytes params_payload;          // local params bytes, required for the greeting
  ValidationPolicy policy{};
  SessionConfig session{};
};

struct HandshakeResult {
  bool confirmed = false;
  SessionKey key{};
  SharedSecret secret;
  ValidationFailure validation = ValidationFailure::none;
  std::string error;  // non-empty when the run aborted
  EmultStats emult_cost;
  std::size_t beta_len = 0;
  std::size_t beta_prime_len = 0;

  bool ok() const { return confirmed && error.empty(); }
};

namespace detail {

inline Bytes expect_frame(Channel& ch, wire::MsgType want) {
  Bytes raw = ch.recv();
  const wire::Frame frame = wire::decode_frame(raw);
  if (frame.type != want) throw wire::DecodeError("unexpected message type");
  return raw;
}

inline Nonce random_nonce(Rng& rng) {
  Nonce nonce{};
  for (std::size_t i = 0; i < nonce.size(); i += 8) {
    const std::uint64_t v = rng();
    for (std::size_t b = 0; b < 8; ++b) nonce[i + b] = std::uint8_t(v >> (8 * b));
  }
  return nonce;
}

}  // namespace detail

/// HD side of the message flow: CERT in, RESPONSE + nonce out, CONFIRM in
/// (optionally CONFIRM out). The session key binds the exact CERT and
/// RESPONSE frame bytes, so any in-flight tampering surfaces as a
/// confirmation failure.
inline HandshakeResult run_hd(Channel& ch, const keygen::SystemParams& params,
                              const keygen::HomeDeviceSecret& hd,
                              const SignatureProvider& verifier, const HandshakeOptions& opts,
                              Rng& rng) {
  HandshakeResult out;
  try {
    const Field& f = params.f();
    if (opts.params_greeting) {
      ch.send(wire::encode_frame(wire::MsgType::params, opts.params_payload));
    }
    const Bytes cert_frame = detail::expect_frame(ch, wire::MsgType::cert);
    const Certificate cert = wire::decode_certificate(
        f.spec(), params.n, wire::decode_frame(cert_frame).payload);

    const ValidationResult valid = validate_public_key(f, cert.pub, cert, verifier, opts.policy);
    if (!valid) {
      out.validation = valid.failure;
      out.error = "public key rejected: " + std::string(to_string(valid.failure));
      return out;
    }

    HDSession session = hd_new_session(hd, params, opts.session, rng);
    out.beta_len = session.beta.size();
    out.beta_prime_len = session.beta_prime.size();
    HDExchange exchange = hd_compute_response(session, cert.pub, params, hd.tvals);
    out.emult_cost += session.gen_cost;
    out.emult_cost += exchange.emult_cost;

    const Nonce nonce = detail::random_nonce(rng);
    const Bytes response_frame = wire::encode_frame(
        wire::MsgType::response,
        wire::encode_response_message(f.spec(), exchange.response, nonce));
    ch.send(response_frame);

    out.secret = exchange.secret;
    out.key = derive_session_key(f.spec(), exchange.secret,
                                 transcript_hash(cert_frame, response_frame));

    const Bytes confirm_frame = detail::expect_frame(ch, wire::MsgType::confirm);
    const auto [role, tag] = wire::decode_confirm(wire::decode_frame(confirm_frame).payload);
    if (role != Role::device || tag.nonce != nonce ||
        !check_confirmation(Role::device, out.key, tag)) {
      out.error = "device confirmation failed";
      return out;
    }
    out.confirmed = true;

    if (opts.mutual_confirmation) {
      ch.send(wire::encode_frame(wire::MsgType::confirm,
                                 wire::encode_confirm(Role::hd,
                                                      confirm_exchange(Role::hd, out.key, nonce))));
    }
  } catch (const std::exception& e) {
    out.confirmed = false;
    out.error = e.what();
  }
  return out;
}

/// Device side: CERT out, RESPONSE in, CONFIRM out (optionally CONFIRM in).
inline HandshakeResult run_device(Channel& ch, const keygen::SystemParams& params,
                                  const keygen::DeviceKeyMaterial& material,
                                  const HandshakeOptions& opts) {
  HandshakeResult out;
  try {
    const Field& f = params.f();
    if (opts.params_greeting) {
      const Bytes params_frame = detail::expect_frame(ch, wire::MsgType::params);
      const auto peer_payload = wire::decode_frame(params_frame).payload;
      if (wire::params_fingerprint(peer_payload) !=
          wire::params_fingerprint(opts.params_payload)) {
        out.error = "params fingerprint mismatch with peer";
        return out;
      }
    }
    const Bytes cert_frame = wire::encode_frame(
        wire::MsgType::cert, wire::encode_certificate(f.spec(), material.cert));
    ch.send(cert_frame);

    const Bytes response_frame = detail::expect_frame(ch, wire::MsgType::response);
    const auto [response, nonce] = wire::decode_response_message(
        f.spec(), params.n, wire::decode_frame(response_frame).payload);

    out.secret = device_compute_secret(f, material, response);
    out.key = derive_session_key(f.spec(), out.secret,
                                 transcript_hash(cert_frame, response_frame));

    ch.send(wire::encode_frame(
        wire::MsgType::confirm,
        wire::encode_confirm(Role::device, confirm_exchange(Role::device, out.key, nonce))));
    out.confirmed = true;

    if (opts.mutual_confirmation) {
      const Bytes confirm_frame = detail::expect_frame(ch, wire::MsgType::confirm);
      const auto [role, tag] = wire::decode_confirm(wire::decode_frame(confirm_frame).payload);
      if (role != Role::hd || tag.nonce != nonce || !check_confirmation(Role::hd, out.key, tag)) {
        out.confirmed = false;
        out.error = "hd confirmation failed";
      }
    }
  } catch (const std::exception& e) {
    out.confirmed = false;
    out.error = e.what();
  }
  return out;
}

}  // namespace ironwood::protocol

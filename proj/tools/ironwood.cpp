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

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "ironwood/bench.hpp"
#include "ironwood/handshake.hpp"
#include "ironwood/ttp.hpp"
#include "ironwood/wire.hpp"

namespace {

using namespace ironwood;

// Exit-code contract: 0 success, 2 usage, 3 validation/confirmation failure,
// 4 I/O, 5 network.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCheck = 3;
constexpr int kExitIo = 4;
constexpr int kExitNet = 5;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) throw IoError("read failed for " + path);
  return data;
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  if (!out.good()) throw IoError("write failed for " + path);
}

std::string hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("IRONWOOD_SEED")) {
    return std::strtoull(env, nullptr, 0);
  }
  std::random_device rd;
  return (std::uint64_t(rd()) << 32) | rd();
}

// Named presets plus "prime:<p>" and "binary:<m>:<hex poly>".
FieldSpec parse_field(const std::string& name) {
  if (name == "gf256") return FieldSpec::gf256();
  if (name == "gf16") return FieldSpec::binary_field(4, 0x13);
  if (name == "gf65536") return FieldSpec::binary_field(16, 0x1002D);
  if (name == "f5") return FieldSpec::prime_field(5);
  if (name.rfind("prime:", 0) == 0) {
    return FieldSpec::prime_field(std::uint32_t(std::stoul(name.substr(6), nullptr, 0)));
  }
  if (name.rfind("binary:", 0) == 0) {
    const auto rest = name.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--field", "expected binary:<m>:<poly>");
    const unsigned m = unsigned(std::stoul(rest.substr(0, colon)));
    const std::uint32_t poly = std::uint32_t(std::stoul(rest.substr(colon + 1), nullptr, 16));
    return FieldSpec::binary_field(m, poly);
  }
  throw CLI::ValidationError("--field", "unknown field '" + name + "'");
}

// Zero-entry policy scaled to the field: at deployment q the spec default
// applies; tiny toy fields would reject honest keys on chance zeros, so the
// threshold loosens while still catching all-zero structures.
protocol::ValidationPolicy default_policy(std::uint32_t q) {
  protocol::ValidationPolicy policy;
  if (q < 64) {
    policy.max_zero_fraction = 0.8;
    policy.reject_zero_row_or_col = false;
  }
  return policy;
}

keygen::TtpState rederive_checked(const wire::ParamsRecord& rec, std::uint64_t seed) {
  keygen::TtpState state =
      keygen::derive_ttp(seed, rec.params.n, rec.params.f().spec(), rec.config);
  if (wire::params_fingerprint(state.params, state.config) != rec.fingerprint) {
    throw CheckError("params fingerprint mismatch: wrong --seed for this params file");
  }
  return state;
}

wire::ParamsRecord load_params(const std::string& path) {
  const auto [type, payload] = wire::decode_record(read_file(path));
  if (type != wire::RecordType::system_params) throw IoError(path + " is not a params file");
  return wire::decode_system_params(payload);
}

wire::HdSecretFile load_hd_key(const std::string& path) {
  const auto [type, payload] = wire::decode_record(read_file(path));
  if (type != wire::RecordType::hd_secret) throw IoError(path + " is not an HD key file");
  return wire::decode_hd_secret(payload);
}

wire::DeviceKeyFile load_device_key(const std::string& path) {
  const auto [type, payload] = wire::decode_record(read_file(path));
  if (type != wire::RecordType::device_key) throw IoError(path + " is not a device key file");
  return wire::decode_device_key(payload);
}

// ---------------------------------------------------------------------------
// In-process frame transport
// ---------------------------------------------------------------------------

class FrameQueue {
 public:
  void push(Bytes frame) {
    {
      std::lock_guard lock(mu_);
      frames_.push_back(std::move(frame));
    }
    cv_.notify_one();
  }

  Bytes pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !frames_.empty(); });
    Bytes out = std::move(frames_.front());
    frames_.pop_front();
    return out;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Bytes> frames_;
};

struct ChannelPair {
  FrameQueue to_hd;
  FrameQueue to_device;

  protocol::Channel hd_side() {
    return {[this](const Bytes& b) { to_device.push(b); }, [this] { return to_hd.pop(); }};
  }
  protocol::Channel device_side() {
    return {[this](const Bytes& b) { to_hd.push(b); }, [this] { return to_device.pop(); }};
  }
};

// ---------------------------------------------------------------------------
// TCP frame transport
// ---------------------------------------------------------------------------

struct HostPort {
  std::string host;
  std::string port;
};

HostPort parse_host_port(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos || colon + 1 >= s.size()) {
    throw CLI::ValidationError("address", "expected host:port");
  }
  return {s.substr(0, colon), s.substr(colon + 1)};
}

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Socket& operator=(Socket&& o) noexcept {
    if (this != &o) {
      close_fd();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close_fd(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

  void set_session_timeout(int seconds) const {
    timeval tv{seconds, 0};
    setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  }

 private:
  void close_fd() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }
  int fd_ = -1;
};

Socket tcp_connect(const HostPort& addr) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  if (getaddrinfo(addr.host.c_str(), addr.port.c_str(), &hints, &result) != 0) {
    throw NetError("cannot resolve " + addr.host);
  }
  Socket sock;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    const int fd = socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      sock = Socket(fd);
      break;
    }
    ::close(fd);
  }
  freeaddrinfo(result);
  if (!sock.valid()) throw NetError("cannot connect to " + addr.host + ":" + addr.port);
  sock.set_session_timeout(10);
  return sock;
}

Socket tcp_listen(const HostPort& addr) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  if (getaddrinfo(addr.host.empty() ? nullptr : addr.host.c_str(), addr.port.c_str(), &hints,
                  &result) != 0) {
    throw NetError("cannot resolve listen address");
  }
  Socket sock;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    const int fd = socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    const int one = 1;
    setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && listen(fd, 8) == 0) {
      sock = Socket(fd);
      break;
    }
    ::close(fd);
  }
  freeaddrinfo(result);
  if (!sock.valid()) throw NetError("cannot listen on " + addr.host + ":" + addr.port);
  return sock;
}

void send_all(int fd, const Bytes& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, 0);
    if (n <= 0) throw NetError("send failed");
    sent += std::size_t(n);
  }
}

Bytes recv_exact(int fd, std::size_t count) {
  Bytes out(count);
  std::size_t got = 0;
  while (got < count) {
    const ssize_t n = ::recv(fd, out.data() + got, count - got, 0);
    if (n <= 0) throw NetError("connection closed or timed out");
    got += std::size_t(n);
  }
  return out;
}

// One frame per message: read the fixed header, then the declared payload.
Bytes recv_frame_fd(int fd) {
  Bytes header = recv_exact(fd, wire::kFrameHeaderSize);
  std::uint32_t len = 0;
  for (int i = 6; i < 10; ++i) len = (len << 8) | header[i];
  if (len > wire::kMaxPayload) throw NetError("oversized frame announced");
  const Bytes payload = recv_exact(fd, len);
  header.insert(header.end(), payload.begin(), payload.end());
  return header;
}

protocol::Channel channel_for(const Socket& sock) {
  const int fd = sock.fd();
  return {[fd](const Bytes& b) { send_all(fd, b); }, [fd] { return recv_frame_fd(fd); }};
}

// ---------------------------------------------------------------------------
// ttp subcommands
// ---------------------------------------------------------------------------

struct TtpArgs {
  int n = 16;
  std::string field = "gf256";
  std::optional<std::uint64_t> seed;
  std::string params_path;
  std::string out_path;
  std::string device_id;
  keygen::TtpConfig cfg;
  bool json = false;
};

int cmd_ttp_init(const TtpArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const keygen::TtpState state = keygen::derive_ttp(seed, args.n, parse_field(args.field), args.cfg);
  const Bytes payload = wire::system_params_payload(state.params, state.config);
  write_file(args.out_path, wire::encode_record(wire::RecordType::system_params, payload));
  std::cout << "params written: " << args.out_path << "\n"
            << "fingerprint: " << hex(wire::params_fingerprint(payload)) << "\n";
  return kExitOk;
}

int cmd_ttp_export_hd(const TtpArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const wire::ParamsRecord rec = load_params(args.params_path);
  const keygen::TtpState state = rederive_checked(rec, seed);
  const Bytes payload =
      wire::hd_secret_payload(state.params, state.config, keygen::hd_secret_of(state),
                              state.signer.algorithm_id(), keygen::ttp_signing_key(seed));
  write_file(args.out_path, wire::encode_record(wire::RecordType::hd_secret, payload));
  std::cout << "hd secret written: " << args.out_path << "\n"
            << "fingerprint: " << hex(rec.fingerprint) << "\n";
  return kExitOk;
}

int cmd_ttp_provision(const TtpArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const wire::ParamsRecord rec = load_params(args.params_path);
  const keygen::TtpState state = rederive_checked(rec, seed);
  const auto material = keygen::provision_device(state, seed, to_bytes(args.device_id));
  const Bytes payload = wire::device_key_payload(state.params, state.config, material);
  write_file(args.out_path, wire::encode_record(wire::RecordType::device_key, payload));
  std::cout << "device key written: " << args.out_path << " (id: " << args.device_id << ")\n"
            << "fingerprint: " << hex(rec.fingerprint) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// exchange subcommands
// ---------------------------------------------------------------------------

struct ExchangeArgs {
  std::string hd_key_path;
  std::string device_key_path;
  std::string listen_addr;
  std::string connect_addr;
  int runs = 1;
  int max_sessions = 0;  // serve: stop after this many (0 = unlimited)
  bool mutual = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_zero_fraction;
  protocol::SessionConfig session;
};

protocol::HandshakeOptions exchange_options(const ExchangeArgs& args, std::uint32_t q,
                                            bool greeting, Bytes params_payload) {
  protocol::HandshakeOptions opts;
  opts.mutual_confirmation = args.mutual;
  opts.params_greeting = greeting;
  opts.params_payload = std::move(params_payload);
  opts.policy = default_policy(q);
  if (args.max_zero_fraction) opts.policy.max_zero_fraction = *args.max_zero_fraction;
  opts.session = args.session;
  return opts;
}

std::string key_fingerprint(const protocol::SessionKey& key) {
  const Digest d = sha256(key);
  return hex(std::span<const std::uint8_t>(d).first(8));
}

int cmd_exchange_run(const ExchangeArgs& args) {
  const wire::HdSecretFile hd = load_hd_key(args.hd_key_path);
  const wire::DeviceKeyFile device = load_device_key(args.device_key_path);
  if (hd.fingerprint != device.fingerprint) {
    throw CheckError("key files carry different params fingerprints");
  }
  const HmacSigner verifier = hd.make_verifier();
  const auto opts = exchange_options(args, hd.params.f().q(), false, {});
  Rng rng(resolve_seed(args.seed));

  int agreed = 0, confirmed = 0;
  std::string first_error;
  for (int run = 0; run < args.runs; ++run) {
    ChannelPair channels;
    protocol::Channel dev_ch = channels.device_side();
    protocol::HandshakeResult dev_result;
    std::thread device_thread([&] {
      dev_result = protocol::run_device(dev_ch, device.params, device.material, opts);
      channels.to_hd.push({});  // poison so an aborted peer never blocks
    });
    protocol::Channel hd_ch = channels.hd_side();
    const protocol::HandshakeResult hd_result =
        protocol::run_hd(hd_ch, hd.params, hd.secret, verifier, opts, rng);
    channels.to_device.push({});
    device_thread.join();

    const bool run_agreed = hd_result.error.empty() && dev_result.error.empty() &&
                            hd_result.secret == dev_result.secret;
    const bool run_confirmed = run_agreed && hd_result.confirmed && dev_result.confirmed;
    agreed += run_agreed;
    confirmed += run_confirmed;
    if (!run_confirmed && first_error.empty()) {
      first_error = !hd_result.error.empty() ? hd_result.error : dev_result.error;
    }
  }
  std::cout << agreed << "/" << args.runs << " agreed, "
            << (confirmed == args.runs ? "confirmed" : std::to_string(confirmed) + " confirmed")
            << "\n";
  if (confirmed != args.runs) {
    throw CheckError(first_error.empty() ? "confirmation failed" : first_error);
  }
  return kExitOk;
}

int cmd_exchange_serve(const ExchangeArgs& args) {
  const wire::HdSecretFile hd = load_hd_key(args.hd_key_path);
  const HmacSigner verifier = hd.make_verifier();
  const Bytes params_payload = wire::system_params_payload(hd.params, hd.config);
  const Socket listener = tcp_listen(parse_host_port(args.listen_addr));
  std::cout << "listening on " << args.listen_addr << " (fingerprint "
            << hex(hd.fingerprint) << ")" << std::endl;

  std::atomic<int> failures{0};
  std::vector<std::thread> workers;
  const std::uint64_t base_seed = resolve_seed(args.seed);
  for (int session = 0; args.max_sessions == 0 || session < args.max_sessions; ++session) {
    const int fd = ::accept(listener.fd(), nullptr, nullptr);
    if (fd < 0) throw NetError("accept failed");
    Socket conn(fd);
    conn.set_session_timeout(10);
    workers.emplace_back(
        [&, session](Socket sock) {
          // per-session rng; sessions stay independent across threads
          Rng rng(base_seed + std::uint64_t(session) * 0x9e3779b97f4a7c15ull);
          protocol::Channel ch = channel_for(sock);
          auto opts = exchange_options(args, hd.params.f().q(), true, params_payload);
          const auto result = protocol::run_hd(ch, hd.params, hd.secret, verifier, opts, rng);
          std::ostringstream line;
          line << "session " << session << ": "
               << (result.ok() ? "confirmed, key fingerprint " + key_fingerprint(result.key)
                               : "failed: " + result.error)
               << "\n";
          std::cout << line.str() << std::flush;
          if (!result.ok()) failures.fetch_add(1);
        },
        std::move(conn));
  }
  for (auto& w : workers) w.join();
  if (failures.load() != 0) throw CheckError("some sessions failed");
  return kExitOk;
}

int cmd_exchange_connect(const ExchangeArgs& args) {
  const wire::DeviceKeyFile device = load_device_key(args.device_key_path);
  const Bytes params_payload = wire::system_params_payload(device.params, device.config);
  const Socket sock = tcp_connect(parse_host_port(args.connect_addr));
  protocol::Channel ch = channel_for(sock);
  const auto opts = exchange_options(args, device.params.f().q(), true, params_payload);
  const auto result = protocol::run_device(ch, device.params, device.material, opts);
  if (!result.confirmed || !result.error.empty()) {
    throw CheckError(result.error.empty() ? "confirmation failed" : result.error);
  }
  std::cout << "confirmed, key fingerprint " << key_fingerprint(result.key) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  int runs = 16;
  std::size_t min_len = 500;
  std::size_t max_len = 8000;
  std::string csv_path;
  int n = 16;
  std::string field = "gf256";
  std::optional<std::uint64_t> seed;
};

int cmd_bench(const BenchArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const keygen::TtpState state = keygen::derive_ttp(seed, args.n, parse_field(args.field));
  const auto material = keygen::provision_device(state, seed, to_bytes("bench-device"));
  Rng rng(seed ^ 0x62656e6368ull);  // domain-separate the sweep rng
  const bench::BenchReport report =
      bench::run_sweep(state.params, keygen::hd_secret_of(state), material.cert.pub,
                       args.min_len, args.max_len, args.runs, rng);

  std::ostringstream csv;
  csv << "run,artin_length_beta,artin_length_beta_prime,field_op_count,wall_time_ns\n";
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    csv << i << "," << r.artin_length_beta << "," << r.artin_length_beta_prime << ","
        << r.field_op_count << "," << r.wall_time_ns << "\n";
  }
  if (!args.csv_path.empty()) {
    const std::string text = csv.str();
    write_file(args.csv_path, Bytes(text.begin(), text.end()));
  } else {
    std::cout << csv.str();
  }

  const auto& s = report.summary;
  const double bound = 3.0 * args.n + 2.0;
  std::cout << std::fixed << std::setprecision(3)
            << "fit: field_ops = " << s.slope << " * total_artin_length + " << s.intercept
            << "\n"
            << "max relative residual: " << s.max_relative_residual * 100.0 << "%\n"
            << "field ops per processed letter: " << s.ops_per_letter << " (bound 3N+2 = "
            << bound << ")\n"
            << "wall time per processed letter: " << s.wall_ns_per_letter << " ns (informational)\n";
  if (s.max_relative_residual >= 0.05) {
    throw CheckError("linearity violated: max relative residual >= 5%");
  }
  if (s.ops_per_letter > bound) {
    throw CheckError("per-letter field-op cost exceeds 3N + O(1)");
  }
  std::cout << "linearity check passed\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// security-level
// ---------------------------------------------------------------------------

int cmd_security_level(std::uint32_t q, int n, std::optional<long long> l) {
  const auto r = protocol::security_level(q, n, l);
  std::cout << std::fixed << std::setprecision(3);
  std::cout << "matrix secrets (C_i, C, C'):  q^N            = " << r.matrix_secret_bits
            << " bits\n";
  std::cout << "T-values:                     (q-2)^N        = " << r.tvalue_bits << " bits\n";
  std::cout << "exchanged key:                q^N            = " << r.exchanged_key_bits
            << " bits\n";
  if (r.braid_bits) {
    std::cout << "private braids (given L):     (L/2)^(N-1)    = " << *r.braid_bits
              << " bits\n";
    std::cout << "overall:                      min of the two = " << *r.overall_bits
              << " bits\n";
  }
  std::cout << "minimal L with L >= 2(q-2)^(1-1/N): " << r.minimal_braid_length << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// inspect (--json is the wire module's non-canonical debug export)
// ---------------------------------------------------------------------------

int cmd_inspect(const std::string& path, bool as_json) {
  const Bytes raw = read_file(path);
  const auto [type, payload] = wire::decode_record(raw);
  nlohmann::json j;
  j["file"] = path;
  j["payload_bytes"] = payload.size();
  switch (type) {
    case wire::RecordType::system_params: {
      const auto rec = wire::decode_system_params(payload);
      j["record"] = "system-params";
      j["n"] = rec.params.n;
      j["q"] = rec.params.f().q();
      j["fingerprint"] = hex(rec.fingerprint);
      j["conjugates_per_set"] = rec.config.conjugates_per_set;
      j["z_length"] = rec.config.z_length;
      j["word_length"] = rec.config.word_length;
      j["pure_fraction"] = rec.config.pure_fraction;
      j["device_beta_factors"] = rec.config.device_beta_factors;
      if (as_json) j["payload_hex"] = hex(payload);
      break;
    }
    case wire::RecordType::hd_secret: {
      const auto file = wire::decode_hd_secret(payload);
      j["record"] = "hd-secret";
      j["n"] = file.params.n;
      j["q"] = file.params.f().q();
      j["fingerprint"] = hex(file.fingerprint);
      j["conjugates"] = file.secret.alpha_set.size();
      std::size_t pure = 0, letters = 0;
      for (std::size_t i = 0; i < file.secret.alpha_set.size(); ++i) {
        pure += file.secret.alpha_set.pure_flags[i];
        letters += file.secret.alpha_set.conjugates[i].size();
      }
      j["pure_conjugates"] = pure;
      j["total_conjugate_letters"] = letters;
      break;
    }
    case wire::RecordType::device_key: {
      const auto file = wire::decode_device_key(payload);
      j["record"] = "device-key";
      j["n"] = file.params.n;
      j["q"] = file.params.f().q();
      j["fingerprint"] = hex(file.fingerprint);
      j["device_id"] = std::string(file.material.cert.device_id.begin(),
                                   file.material.cert.device_id.end());
      j["public_key_bytes"] =
          wire::encode_public_key(file.params.f().spec(), file.material.cert.pub).size();
      if (as_json) {
        j["public_key_hex"] =
            hex(wire::encode_public_key(file.params.f().spec(), file.material.cert.pub));
        j["signature_hex"] = hex(file.material.cert.signature);
      }
      break;
    }
    case wire::RecordType::certificate: {
      j["record"] = "certificate";
      if (as_json) j["payload_hex"] = hex(payload);
      break;
    }
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "record: " << j["record"].get<std::string>() << "\n";
    for (const auto& [key, value] : j.items()) {
      if (key != "record") std::cout << "  " << key << ": " << value.dump() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ironwood key agreement: TTP provisioning, handshakes, benchmarks"};
  app.require_subcommand(1);

  TtpArgs ttp_args;
  ExchangeArgs ex_args;
  BenchArgs bench_args;
  std::uint32_t sl_q = 256;
  int sl_n = 16;
  std::optional<long long> sl_l;
  std::string inspect_path;
  bool inspect_json = false;

  auto* ttp = app.add_subcommand("ttp", "TTP data generation and distribution");
  ttp->require_subcommand(1);
  auto* init = ttp->add_subcommand("init", "generate system params and write a params file");
  init->add_option("--n", ttp_args.n, "strand count (even)")->default_val(16);
  init->add_option("--field", ttp_args.field, "gf256|gf16|gf65536|f5|prime:<p>|binary:<m>:<hex>")
      ->default_val("gf256");
  init->add_option("--conjugates", ttp_args.cfg.conjugates_per_set, "conjugates per set")
      ->default_val(32);
  init->add_option("--z-length", ttp_args.cfg.z_length)->default_val(64);
  init->add_option("--word-length", ttp_args.cfg.word_length)->default_val(64);
  init->add_option("--pure-fraction", ttp_args.cfg.pure_fraction)->default_val(0.5);
  init->add_option("--beta-factors", ttp_args.cfg.device_beta_factors,
                   "conjugate factors per issued device braid")
      ->default_val(40);
  init->add_option("--seed", ttp_args.seed, "TTP master seed (env IRONWOOD_SEED fallback)");
  init->add_option("--out", ttp_args.out_path, "output params file")->required();

  auto* export_hd = ttp->add_subcommand("export-hd", "emit the HD secret file");
  export_hd->add_option("--params", ttp_args.params_path)->required();
  export_hd->add_option("--seed", ttp_args.seed);
  export_hd->add_option("--out", ttp_args.out_path)->required();

  auto* provision = ttp->add_subcommand("provision-device", "emit a device key file");
  provision->add_option("--params", ttp_args.params_path)->required();
  provision->add_option("--seed", ttp_args.seed);
  provision->add_option("--id", ttp_args.device_id, "device identifier")->required();
  provision->add_option("--out", ttp_args.out_path)->required();

  auto* exchange = app.add_subcommand("exchange", "run the authentication and key agreement");
  exchange->require_subcommand(1);
  auto* run = exchange->add_subcommand("run", "in-process handshakes");
  run->add_option("--hd-key", ex_args.hd_key_path)->required();
  run->add_option("--device-key", ex_args.device_key_path)->required();
  run->add_option("--runs", ex_args.runs)->default_val(1);
  run->add_option("--seed", ex_args.seed);
  run->add_flag("--mutual", ex_args.mutual, "HD also confirms to the device");
  run->add_option("--beta-factors", ex_args.session.beta_factors)->default_val(40);
  run->add_option("--extra-pure-factors", ex_args.session.extra_pure_factors)->default_val(12);
  run->add_option("--max-zero-fraction", ex_args.max_zero_fraction,
                  "override the public-key zero-entry policy");

  auto* serve = exchange->add_subcommand("serve", "HD side over TCP, one session per connection");
  serve->add_option("--hd-key", ex_args.hd_key_path)->required();
  serve->add_option("--listen", ex_args.listen_addr, "host:port")->required();
  serve->add_option("--max-sessions", ex_args.max_sessions, "exit after N sessions (0 = run on)")
      ->default_val(0);
  serve->add_option("--seed", ex_args.seed);
  serve->add_flag("--mutual", ex_args.mutual);
  serve->add_option("--beta-factors", ex_args.session.beta_factors)->default_val(40);
  serve->add_option("--extra-pure-factors", ex_args.session.extra_pure_factors)->default_val(12);
  serve->add_option("--max-zero-fraction", ex_args.max_zero_fraction);

  auto* connect = exchange->add_subcommand("connect", "device side over TCP");
  connect->add_option("--device-key", ex_args.device_key_path)->required();
  connect->add_option("--connect", ex_args.connect_addr, "host:port")->required();
  connect->add_flag("--mutual", ex_args.mutual);

  auto* bench_cmd = app.add_subcommand("bench", "linear-scaling benchmark over a length sweep");
  bench_cmd->add_option("--runs", bench_args.runs)->default_val(16);
  bench_cmd->add_option("--min-len", bench_args.min_len)->default_val(500);
  bench_cmd->add_option("--max-len", bench_args.max_len)->default_val(8000);
  bench_cmd->add_option("--csv", bench_args.csv_path, "write per-run records to this CSV file");
  bench_cmd->add_option("--n", bench_args.n)->default_val(16);
  bench_cmd->add_option("--field", bench_args.field)->default_val("gf256");
  bench_cmd->add_option("--seed", bench_args.seed);

  auto* sl = app.add_subcommand("security-level", "brute-force security level calculator");
  sl->add_option("--q", sl_q, "field size")->required();
  sl->add_option("--n", sl_n, "strand count")->required();
  sl->add_option("--l", sl_l, "ephemeral braid Artin length");

  auto* inspect = app.add_subcommand("inspect", "summarize a key file");
  inspect->add_option("file", inspect_path)->required();
  inspect->add_flag("--json", inspect_json, "hex-encoded JSON debug export (non-canonical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kExitUsage;
  }

  try {
    if (init->parsed()) return cmd_ttp_init(ttp_args);
    if (export_hd->parsed()) return cmd_ttp_export_hd(ttp_args);
    if (provision->parsed()) return cmd_ttp_provision(ttp_args);
    if (run->parsed()) return cmd_exchange_run(ex_args);
    if (serve->parsed()) return cmd_exchange_serve(ex_args);
    if (connect->parsed()) return cmd_exchange_connect(ex_args);
    if (bench_cmd->parsed()) return cmd_bench(bench_args);
    if (sl->parsed()) return cmd_security_level(sl_q, sl_n, sl_l);
    if (inspect->parsed()) return cmd_inspect(inspect_path, inspect_json);
  } catch (const CheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  } catch (const NetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNet;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const wire::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  }
  return kExitUsage;
}

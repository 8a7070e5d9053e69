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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ironwood/keygen.hpp"
#include "ironwood/protocol.hpp"

namespace ironwood::bench {

struct RunRecord {
  std::size_t artin_length_beta = 0;
  std::size_t artin_length_beta_prime = 0;
  std::uint64_t field_op_count = 0;  // emult instrumentation counters only
  std::uint64_t wall_time_ns = 0;
};

/// Least-squares fit of field_op_count against total session Artin length
/// |beta| + |beta'|. Each session E-Multiplies both words twice (Steps 4 and
/// 5), so ops_per_letter = slope / 2.
struct RegressionSummary {
  double slope = 0;
  double intercept = 0;
  double max_relative_residual = 0;
  double ops_per_letter = 0;
  double wall_ns_per_letter = 0;
};

struct BenchReport {
  std::vector<RunRecord> runs;
  RegressionSummary summary;
};

namespace detail {

inline double average_length(const ConjugateSet& set, bool pure_only) {
  double total = 0;
  int count = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (pure_only && !set.pure_flags[i]) continue;
    total += double(set.conjugates[i].size());
    ++count;
  }
  return count ? total / count : 0.0;
}

}  // namespace detail

/// Sweeps HD sessions whose total Artin length spans [min_len, max_len],
/// running a full HD-side exchange against one provisioned public key per
/// run and recording instrumented emult field-op counts.
inline BenchReport run_sweep(const keygen::SystemParams& params,
                             const keygen::HomeDeviceSecret& hd, const PublicKey& pub,
                             std::size_t min_len, std::size_t max_len, int runs, Rng& rng) {
  if (runs < 2 || min_len >= max_len) throw std::invalid_argument("bench: degenerate sweep");

  const double entry_len = detail::average_length(hd.alpha_set, false);
  const double pure_len = detail::average_length(hd.alpha_set, true);
  // Entries look like z w z^-1; in a product the interior conjugators
  // cancel, so each extra factor contributes roughly the w part. With the
  // default z/word lengths equal, w is about a third of an entry.
  const double wrap = 2.0 * entry_len / 3.0;
  const double per_factor = entry_len / 3.0;
  const double per_pure = pure_len > wrap ? pure_len - wrap : per_factor;

  // Estimated total length for a factor count f with extra = max(1, f/3)
  // pure insertions; used only to steer the sweep, the fit uses actuals.
  auto estimate = [&](int f) {
    const int extra = f / 3 > 1 ? f / 3 : 1;
    const double beta = wrap + f * per_factor;
    const double beta_prime = beta + extra * per_pure;
    return beta + beta_prime;
  };
  auto factors_for = [&](double target) {
    int best = 1;
    double best_err = -1;
    for (int f = 1; f < 4096; ++f) {
      const double err = std::abs(estimate(f) - target);
      if (best_err < 0 || err < best_err) {
        best = f;
        best_err = err;
      }
      if (estimate(f) > 2 * target) break;
    }
    return best;
  };

  BenchReport report;
  for (int k = 0; k < runs; ++k) {
    const double target =
        double(min_len) + (double(max_len) - double(min_len)) * k / (runs - 1);
    protocol::SessionConfig cfg;
    cfg.beta_factors = factors_for(target);
    cfg.extra_pure_factors = cfg.beta_factors / 3 > 1 ? cfg.beta_factors / 3 : 1;

    const auto t0 = std::chrono::steady_clock::now();
    protocol::HDSession session = protocol::hd_new_session(hd, params, cfg, rng);
    protocol::HDExchange exchange =
        protocol::hd_compute_response(session, pub, params, hd.tvals);
    const auto t1 = std::chrono::steady_clock::now();

    EmultStats cost = session.gen_cost;
    cost += exchange.emult_cost;
    report.runs.push_back(RunRecord{
        session.beta.size(), session.beta_prime.size(), cost.field_ops,
        std::uint64_t(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count())});
  }

  // least squares y = slope * x + intercept, x = |beta| + |beta'|
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double swall = 0;
  const double m = double(report.runs.size());
  for (const auto& r : report.runs) {
    const double x = double(r.artin_length_beta + r.artin_length_beta_prime);
    const double y = double(r.field_op_count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    swall += double(r.wall_time_ns) / x;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("bench: degenerate sweep (constant length)");
  report.summary.slope = (m * sxy - sx * sy) / denom;
  report.summary.intercept = (sy - report.summary.slope * sx) / m;
  double max_rel = 0;
  for (const auto& r : report.runs) {
    const double x = double(r.artin_length_beta + r.artin_length_beta_prime);
    const double y = double(r.field_op_count);
    const double fit = report.summary.slope * x + report.summary.intercept;
    const double rel = std::abs(y - fit) / y;
    if (rel > max_rel) max_rel = rel;
  }
  report.summary.max_relative_residual = max_rel;
  report.summary.ops_per_letter = report.summary.slope / 2.0;  // two emult passes per word
  report.summary.wall_ns_per_letter = swall / m / 2.0;
  return report;
}

}  // namespace ironwood::bench

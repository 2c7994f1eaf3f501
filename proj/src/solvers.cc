// Copyright 2026 The mecsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mecsim/solvers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mecsim/errors.h"
#include "mecsim/model.h"

namespace mecsim {

double solve_partition(double q_local, double q_offload, double arrivals) {
  if (!(arrivals > 0.0)) return 0.0;
  if (q_offload <= q_local - arrivals) return 0.0;
  if (q_offload >= q_local + arrivals) return 1.0;
  return std::clamp((q_offload + arrivals - q_local) / (2.0 * arrivals), 0.0,
                    1.0);
}

double solve_frequency(double q_local, double eta, double control_weight,
                       const SimConfig& cfg) {
  const double stationary =
      std::sqrt((q_local + control_weight * eta) /
                (3.0 * cfg.switched_capacitance * control_weight *
                 cfg.cycles_per_bit));
  return std::min(stationary, cfg.max_frequency);
}

double solve_power(double gamma, double bit_weight, double control_weight,
                   const SimConfig& cfg) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kNoAssociation,
                "power requested for a device without an associated server");
  }
  if (control_weight >= bit_weight * gamma / std::numbers::ln2) return 0.0;
  return std::min(cfg.max_power,
                  bit_weight / (control_weight * std::numbers::ln2) -
                      1.0 / gamma);
}

double share_for_multiplier(double queue_weight, double signal,
                            double multiplier, const SimConfig& cfg,
                            double guess) {
  const double eps = cfg.min_bandwidth_share;
  if (!(queue_weight > 0.0) || !(signal > 0.0)) return eps;
  auto excess = [&](double a) {
    return queue_weight * rate_share_slope(signal, a, cfg) - multiplier;
  };
  if (excess(eps) <= 0.0) return eps;
  if (excess(1.0) >= 0.0) return 1.0;

  // excess() is decreasing; keep lo on the positive side, hi on the negative.
  double lo = eps;
  double hi = 1.0;
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = excess(x);
    if (fx == 0.0) return x;
    if (fx > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double dfx = queue_weight * rate_share_curvature(signal, x, cfg);
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step < cfg.root_tolerance || hi - lo < cfg.root_tolerance) break;
  }
  return x;
}

double bandwidth_objective(const Vector& queue_weight, const Vector& signal,
                           const Vector& share, const SimConfig& cfg) {
  double total = 0.0;
  for (Eigen::Index u = 0; u < share.size(); ++u) {
    // rate with unit gain and power == signal
    total -= queue_weight(u) * offload_rate(signal(u), 1.0, share(u), cfg);
  }
  return total;
}

BandwidthAllocation solve_bandwidth(const Vector& queue_weight,
                                    const Vector& signal,
                                    const SimConfig& cfg) {
  const Eigen::Index n = queue_weight.size();
  const double eps = cfg.min_bandwidth_share;
  const double zeta = cfg.bandwidth_tolerance;
  BandwidthAllocation out;
  out.search.tolerance = zeta;
  if (n == 0) {
    out.share.resize(0);
    out.search.converged = true;
    return out;
  }
  if (n == 1) {
    out.share = Vector::Ones(1);
    out.search.converged = true;
    return out;
  }

  bool any_active = false;
  double lower = std::numeric_limits<double>::infinity();
  double upper = 0.0;
  for (Eigen::Index u = 0; u < n; ++u) {
    const bool active = queue_weight(u) > 0.0 && signal(u) > 0.0;
    any_active = any_active || active;
    const double at_one =
        active ? queue_weight(u) * rate_share_slope(signal(u), 1.0, cfg) : 0.0;
    const double at_eps =
        active ? queue_weight(u) * rate_share_slope(signal(u), eps, cfg) : 0.0;
    lower = std::min(lower, at_one);
    upper = std::max(upper, at_eps);
  }
  if (!any_active) {
    // Flat objective: every split is optimal, hand out the band evenly.
    out.share = Vector::Constant(n, 1.0 / static_cast<double>(n));
    out.search.converged = true;
    return out;
  }

  Vector share(n);
  Vector guess = Vector::Constant(n, -1.0);
  auto allocate = [&](double multiplier) {
    double total = 0.0;
    for (Eigen::Index u = 0; u < n; ++u) {
      share(u) = share_for_multiplier(queue_weight(u), signal(u), multiplier,
                                      cfg, guess(u));
      guess(u) = share(u);
      total += share(u);
    }
    return total;
  };

  for (int expand = 0; allocate(lower) < 1.0 - zeta; ++expand) {
    if (expand == 5 || lower == 0.0) {
      throw Error(ErrorCode::kBracketFailure,
                  "lower multiplier bound does not exhaust the band");
    }
    lower /= 10.0;
  }
  for (int expand = 0; allocate(upper) > 1.0 + zeta; ++expand) {
    if (expand == 5) {
      throw Error(ErrorCode::kBracketFailure,
                  "upper multiplier bound still over-allocates the band");
    }
    upper *= 10.0;
  }

  LagrangeSearchState& s = out.search;
  s.lower = lower;
  s.upper = upper;
  double lo = lower;
  double hi = upper;
  for (s.iterations = 1; s.iterations <= cfg.max_lagrange_iterations;
       ++s.iterations) {
    s.multiplier = 0.5 * (lo + hi);
    const double total = allocate(s.multiplier);
    if (std::abs(total - 1.0) <= zeta) {
      s.converged = true;
      break;
    }
    if (total > 1.0) {
      lo = s.multiplier;
    } else {
      hi = s.multiplier;
    }
  }
  if (!s.converged) {
    // Fall back to the budget-feasible side of the bracket.
    s.iterations = cfg.max_lagrange_iterations;
    s.multiplier = hi;
    allocate(hi);
  }
  out.share = share;
  return out;
}

}  // namespace mecsim

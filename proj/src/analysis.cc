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

#include "mecsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "mecsim/errors.h"
#include "mecsim/model.h"

namespace mecsim {

BoundConstants bound_constants(std::span<const SlotRecord> records,
                               const SimConfig& cfg, double warmup_fraction) {
  const int n = cfg.num_devices;
  BoundConstants k;
  k.device_local_max =
      Vector::Constant(n, local_bits(cfg.max_frequency, cfg));
  Vector peak_gain = Vector::Zero(n);
  for (const auto& r : records) {
    peak_gain = peak_gain.cwiseMax(r.sample.gains.rowwise().maxCoeff());
  }
  k.device_offload_max.resize(n);
  for (int u = 0; u < n; ++u) {
    k.device_offload_max(u) =
        offload_rate(peak_gain(u), cfg.max_power, 1.0, cfg) * cfg.slot_length;
  }
  k.c1 = 0.5 * (k.device_local_max.squaredNorm() +
                k.device_offload_max.squaredNorm());
  k.c2 = 0.5 * cfg.arrival_max * cfg.arrival_max;
  k.local_max = k.device_local_max.sum();
  k.offload_max = k.device_offload_max.sum();
  k.energy_min = 0.0;

  const auto skip = static_cast<std::size_t>(
      std::floor(warmup_fraction * static_cast<double>(records.size())));
  double local_min = std::numeric_limits<double>::infinity();
  double offload_min = std::numeric_limits<double>::infinity();
  for (std::size_t t = skip; t < records.size(); ++t) {
    local_min = std::min(local_min, records[t].outcome.local_bits.sum());
    offload_min = std::min(offload_min, records[t].outcome.offload_bits.sum());
  }
  k.local_min = std::isfinite(local_min) ? local_min : 0.0;
  k.offload_min = std::isfinite(offload_min) ? offload_min : 0.0;
  return k;
}

DriftCheck drift_plus_penalty_check(const SlotRecord& r,
                                    const BoundConstants& constants,
                                    double control_weight) {
  const double v = control_weight;
  const double eta = r.before.eta;
  const auto& ql = r.before.local.array();
  const auto& qo = r.before.offload.array();
  const auto& dl = r.outcome.local_bits.array();
  const auto& d_o = r.outcome.offload_bits.array();
  const auto& a = r.sample.arrivals.array();
  const auto& c = r.decision.partition.array();

  // (Q'^2 - Q^2) / 2 written as a product to avoid cancellation.
  const double drift =
      0.5 * ((r.local_after.array() - ql) * (r.local_after.array() + ql)).sum() +
      0.5 *
          ((r.offload_after.array() - qo) * (r.offload_after.array() + qo)).sum();
  DriftCheck out;
  out.lhs = drift + v * (r.outcome.total_energy - eta * r.outcome.total_bits);
  out.rhs = constants.c1 + v * r.outcome.total_energy -
            ((v * eta + ql) * dl).sum() - ((v * eta + qo) * d_o).sum() +
            (qo * a).sum() +
            ((ql * c - qo * c + c * c * a + 0.5 * a - c * a) * a).sum();
  out.ok = out.lhs <= out.rhs + 1e-6 * std::abs(out.rhs);
  return out;
}

PerformanceBounds performance_bounds(const BoundConstants& constants,
                                     double control_weight, double eta_star,
                                     double epsilon) {
  const double served = constants.local_min + constants.offload_min;
  if (!(control_weight > 0.0) || !(served > 0.0)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "control weight and minimum service must be positive");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kDegenerateDenominator, "slack must be positive");
  }
  PerformanceBounds b;
  b.ee_gap = (constants.c1 + constants.c2) / (control_weight * served);
  b.queue = (constants.c1 + constants.c2 +
             control_weight * eta_star *
                 (constants.local_max + constants.offload_max) -
             constants.energy_min) /
            epsilon;
  return b;
}

std::vector<SweepPoint> aggregate_sweep(std::span<const LabeledRun> runs) {
  std::map<SweepKey, std::vector<const LabeledRun*>> groups;
  for (const auto& r : runs) groups[r.key].push_back(&r);

  std::vector<SweepPoint> points;
  points.reserve(groups.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, members] : groups) {
    SweepPoint p;
    p.key = key;
    for (const LabeledRun* r : members) {
      const RunSummary& s = r->summary;
      p.network_ee += s.network_ee.value_or(nan);
      p.average_delay += s.average_delay.value_or(nan);
      p.average_energy += s.average_energy;
      p.average_backlog += s.average_backlog;
      p.average_bits += s.average_bits;
      p.seeds.push_back(r->seed);
    }
    const auto count = static_cast<double>(members.size());
    p.network_ee /= count;
    p.average_delay /= count;
    p.average_energy /= count;
    p.average_backlog /= count;
    p.average_bits /= count;
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace mecsim

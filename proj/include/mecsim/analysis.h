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

#ifndef MECSIM_ANALYSIS_H_
#define MECSIM_ANALYSIS_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "mecsim/config.h"
#include "mecsim/controller.h"
#include "mecsim/types.h"

namespace mecsim {

// Constants of the drift bound and of the long-run performance bounds,
// estimated over one realized horizon.
struct BoundConstants {
  // 1/2 sum_u (D^l_u,max^2 + D^o_u,max^2).
  double c1 = 0.0;
  // A_max^2 / 2.
  double c2 = 0.0;
  // Smallest per-slot network total of local / offloaded bits after warm-up.
  double local_min = 0.0;
  double offload_min = 0.0;
  // Upper bounds on the per-slot network totals.
  double local_max = 0.0;
  double offload_max = 0.0;
  double energy_min = 0.0;
  // Per-device service bounds entering c1. The offload bound uses the whole
  // band at max power over the largest gain seen on the horizon.
  Vector device_local_max;
  Vector device_offload_max;
};

BoundConstants bound_constants(std::span<const SlotRecord> records,
                               const SimConfig& cfg,
                               double warmup_fraction = 0.1);

struct DriftCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// Realized one-slot Lyapunov drift plus V (E - eta D) against the upper
// bound that holds for any feasible decision, both evaluated on the slot's
// actual values. ok when lhs <= rhs + 1e-6 |rhs|.
DriftCheck drift_plus_penalty_check(const SlotRecord& record,
                                    const BoundConstants& constants,
                                    double control_weight);

struct PerformanceBounds {
  double ee_gap = 0.0;  // J/bit above the optimum
  double queue = 0.0;   // bits, time-averaged total backlog
};

// O(1/V) energy-efficiency gap and O(V) backlog bounds. `eta_star` and
// `epsilon` are proxies for the unobservable optimum and slack. Throws
// kDegenerateDenominator.
PerformanceBounds performance_bounds(const BoundConstants& constants,
                                     double control_weight, double eta_star,
                                     double epsilon);

struct SweepKey {
  double control_weight = 0.0;
  double arrival_min = 0.0;
  double arrival_max = 0.0;
  int devices = 0;
  int servers = 0;
  PolicyKind policy = PolicyKind::kOoraa;

  auto operator<=>(const SweepKey&) const = default;
};

struct LabeledRun {
  SweepKey key;
  std::uint64_t seed = 0;
  RunSummary summary;
};

struct SweepPoint {
  SweepKey key;
  double network_ee = 0.0;
  double average_delay = 0.0;
  double average_energy = 0.0;
  double average_backlog = 0.0;
  double average_bits = 0.0;
  std::vector<std::uint64_t> seeds;
};

// Means over the seeds of every key, sorted by key (control weight first).
// Runs without a defined EE or delay contribute NaN.
std::vector<SweepPoint> aggregate_sweep(std::span<const LabeledRun> runs);

}  // namespace mecsim

#endif  // MECSIM_ANALYSIS_H_

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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "mecsim/analysis.h"
#include "mecsim/controller.h"
#include "mecsim/errors.h"
#include "mecsim/model.h"

namespace mecsim {
namespace {

SlotRecord single_device_record(double ql, double qo, double c, double a,
                                double f, double dout, double p, double eta,
                                const SimConfig& cfg) {
  SlotRecord r;
  r.before = QueueState::zeros(1);
  r.before.local(0) = ql;
  r.before.offload(0) = qo;
  r.before.eta = eta;
  r.sample.arrivals = Vector::Constant(1, a);
  r.decision = Decision::idle(1, 1);
  r.decision.partition(0) = c;
  r.decision.frequency(0) = f;
  r.decision.power(0) = p;
  r.outcome.local_bits = Vector::Constant(1, local_bits(f, cfg));
  r.outcome.offload_bits = Vector::Constant(1, dout);
  r.outcome.local_energy = Vector::Constant(1, local_energy(f, cfg));
  r.outcome.offload_energy = Vector::Constant(1, p * cfg.slot_length);
  r.outcome.total_energy = r.outcome.local_energy(0) + r.outcome.offload_energy(0);
  r.outcome.total_bits = r.outcome.local_bits(0) + dout;
  r.local_after = Vector::Constant(
      1, std::max(ql - r.outcome.local_bits(0), 0.0) + c * a);
  r.offload_after = Vector::Constant(1, std::max(qo - dout, 0.0) + (1 - c) * a);
  return r;
}

TEST(DriftCheck, IdleSlot) {
  SimConfig cfg;
  SlotRecord r = single_device_record(300, 200, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, cfg);
  BoundConstants k;
  k.c1 = 10.0;
  const DriftCheck d = drift_plus_penalty_check(r, k, cfg.control_weight);
  EXPECT_EQ(d.lhs, 0.0);
  EXPECT_EQ(d.rhs, 10.0);
  EXPECT_TRUE(d.ok);
}

// Re-derives both sides term by term in the order of the proof: square the
// queue recursions, bound the truncation, collect the arrival terms.
TEST(DriftCheck, HandConstructedSlotFollowsTheProofAlgebra) {
  SimConfig cfg;
  cfg.num_devices = 1;
  const double ql = 1200, qo = 800, c = 0.4, a = 1700, f = 1.5e8, dout = 950,
               p = 0.02, eta = 3e-9, v = 1e11;
  const SlotRecord r = single_device_record(ql, qo, c, a, f, dout, p, eta, cfg);
  const double dl = cfg.slot_length * f / cfg.cycles_per_bit;
  const double dlmax = cfg.slot_length * cfg.max_frequency / cfg.cycles_per_bit;
  const double domax = 30000.0;
  BoundConstants k;
  k.c1 = 0.5 * (dlmax * dlmax + domax * domax);

  // Realized drift.
  const double ql1 = std::max(ql - dl, 0.0) + c * a;
  const double qo1 = std::max(qo - dout, 0.0) + (1 - c) * a;
  const double drift = 0.5 * (ql1 * ql1 - ql * ql) + 0.5 * (qo1 * qo1 - qo * qo);
  const double energy = cfg.slot_length * (cfg.switched_capacitance * f * f * f + p);
  const double lhs = drift + v * (energy - eta * (dl + dout));

  // ([Q - D]^+ + A)^2 <= Q^2 + D^2 + A^2 - 2 Q (D - A)
  const double local_bound = 0.5 * dl * dl + 0.5 * c * c * a * a - ql * (dl - c * a);
  const double offload_bound =
      0.5 * dout * dout + 0.5 * (1 - c) * (1 - c) * a * a - qo * (dout - (1 - c) * a);
  EXPECT_LE(drift, local_bound + offload_bound);
  // Service squares bounded by the per-device maxima.
  const double rhs = k.c1 + v * energy - v * eta * (dl + dout) +
                     (local_bound - 0.5 * dl * dl) +
                     (offload_bound - 0.5 * dout * dout);

  const DriftCheck d = drift_plus_penalty_check(r, k, v);
  EXPECT_NEAR(d.lhs, lhs, 1e-9 * std::abs(lhs));
  EXPECT_NEAR(d.rhs, rhs, 1e-9 * std::abs(rhs));
  EXPECT_TRUE(d.ok);
}

TEST(DriftCheck, HoldsOnEverySlotOfARun) {
  SimConfig cfg;
  cfg.horizon = 10000;
  const RunResult res = run(cfg, Policy{});
  const BoundConstants k = bound_constants(res.records, cfg);
  int failures = 0;
  for (const auto& r : res.records) {
    failures += !drift_plus_penalty_check(r, k, cfg.control_weight).ok;
  }
  EXPECT_EQ(failures, 0);
}

TEST(Constants, DefinitionsFromTheRun) {
  SimConfig cfg;
  cfg.horizon = 200;
  const RunResult res = run(cfg, Policy{});
  const BoundConstants k = bound_constants(res.records, cfg, 0.0);
  EXPECT_DOUBLE_EQ(k.c2, 0.5 * 2000.0 * 2000.0);
  const double dl = cfg.slot_length * cfg.max_frequency / cfg.cycles_per_bit;
  EXPECT_DOUBLE_EQ(k.device_local_max(0), dl);
  double sum_sq = cfg.num_devices * dl * dl;
  double min_local = std::numeric_limits<double>::infinity();
  for (int u = 0; u < cfg.num_devices; ++u) {
    double peak = 0.0;
    for (const auto& r : res.records) peak = std::max(peak, r.sample.gains.row(u).maxCoeff());
    const double dmax = offload_rate(peak, cfg.max_power, 1.0, cfg) * cfg.slot_length;
    EXPECT_DOUBLE_EQ(k.device_offload_max(u), dmax);
    sum_sq += dmax * dmax;
  }
  for (const auto& r : res.records) min_local = std::min(min_local, r.outcome.local_bits.sum());
  EXPECT_NEAR(k.c1, 0.5 * sum_sq, 1e-12 * k.c1);
  EXPECT_EQ(k.local_min, min_local);
  EXPECT_LE(k.local_min, k.local_max);
  EXPECT_LE(k.offload_min, k.offload_max);
  EXPECT_EQ(k.energy_min, 0.0);
}

TEST(Bounds, ScalingInTheControlWeight) {
  BoundConstants k;
  k.c1 = 5e7;
  k.c2 = 2e6;
  k.local_min = 1000;
  k.offload_min = 4000;
  k.local_max = 30000;
  k.offload_max = 250000;
  const double eta = 1e-8, eps = 100.0;
  const PerformanceBounds b1 = performance_bounds(k, 1e10, eta, eps);
  const PerformanceBounds b2 = performance_bounds(k, 2e10, eta, eps);
  const PerformanceBounds b3 = performance_bounds(k, 3e10, eta, eps);
  EXPECT_EQ(b2.ee_gap, b1.ee_gap / 2.0);
  const double slope = eta * (k.local_max + k.offload_max) / eps;
  EXPECT_NEAR(b2.queue - b1.queue, 1e10 * slope, 1e-9 * b2.queue);
  EXPECT_NEAR(b3.queue - b2.queue, 1e10 * slope, 1e-9 * b3.queue);
}

TEST(Bounds, DegenerateDenominator) {
  BoundConstants k;
  for (double v : {1e10, 0.0}) {
    try {
      performance_bounds(k, v, 1e-8, 100.0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateDenominator);
    }
  }
}

TEST(Bounds, PilotSweepIsDominated) {
  SimConfig cfg;
  cfg.horizon = 2000;
  const std::vector<double> weights{1e9, 1e10, 1e11, 1e12};
  std::vector<RunResult> runs;
  double eta_star = std::numeric_limits<double>::infinity();
  for (double v : weights) {
    cfg.control_weight = v;
    runs.push_back(run(cfg, Policy{}));
    eta_star = std::min(eta_star, *runs.back().summary.network_ee);
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cfg.control_weight = weights[i];
    const BoundConstants k = bound_constants(runs[i].records, cfg);
    const PerformanceBounds b = performance_bounds(k, weights[i], eta_star, 100.0);
    EXPECT_GE(b.ee_gap, *runs[i].summary.network_ee - eta_star) << weights[i];
    EXPECT_GE(b.queue, runs[i].summary.average_backlog) << weights[i];
  }
}

LabeledRun labeled(double v, std::uint64_t seed, double ee, double backlog) {
  LabeledRun r;
  r.key.control_weight = v;
  r.key.devices = 10;
  r.key.servers = 3;
  r.seed = seed;
  r.summary.network_ee = ee;
  r.summary.average_delay = backlog / 15000.0 * 1e-3;
  r.summary.average_backlog = backlog;
  r.summary.average_energy = ee * 2;
  r.summary.average_bits = 3;
  return r;
}

TEST(Aggregate, SingleRunPointEqualsItsSummary) {
  const std::vector<LabeledRun> runs{labeled(1e11, 1, 2e-8, 5e4)};
  const auto points = aggregate_sweep(runs);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].network_ee, 2e-8);
  EXPECT_EQ(points[0].average_backlog, 5e4);
  EXPECT_EQ(points[0].average_delay, runs[0].summary.average_delay);
  EXPECT_EQ(points[0].seeds, std::vector<std::uint64_t>{1});
}

TEST(Aggregate, IdenticalRunsGiveIdenticalPoints) {
  SimConfig cfg;
  cfg.horizon = 300;
  const RunSummary s = run(cfg, Policy{}).summary;
  const RunSummary t = run(cfg, Policy{}).summary;
  LabeledRun a, b;
  a.summary = s;
  b.summary = t;
  b.key.control_weight = 1.0;  // separate group
  const auto points = aggregate_sweep(std::vector<LabeledRun>{a, b});
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].network_ee, points[1].network_ee);
  EXPECT_EQ(points[0].average_backlog, points[1].average_backlog);
}

TEST(Aggregate, MeansOverSeedsAndSortedByWeight) {
  std::vector<LabeledRun> runs;
  const double ee[5] = {1.1e-8, 1.3e-8, 0.9e-8, 1.25e-8, 1.05e-8};
  const double q[5] = {4e4, 5.5e4, 4.4e4, 6e4, 5e4};
  for (int i = 0; i < 5; ++i) runs.push_back(labeled(1e11, i + 1, ee[i], q[i]));
  runs.push_back(labeled(1e9, 1, 5e-8, 1e4));
  const auto points = aggregate_sweep(runs);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].key.control_weight, 1e9);
  const SweepPoint& p = points[1];
  double manual_ee = 0, manual_q = 0;
  for (int i = 0; i < 5; ++i) {
    manual_ee += ee[i];
    manual_q += q[i];
  }
  EXPECT_NEAR(p.network_ee, manual_ee / 5, 1e-12 * manual_ee / 5);
  EXPECT_NEAR(p.average_backlog, manual_q / 5, 1e-12 * manual_q / 5);
  EXPECT_EQ(p.seeds.size(), 5u);
  // Little's law holds point by point.
  for (const auto& pt : points) {
    EXPECT_NEAR(pt.average_delay / pt.average_backlog, 1e-3 / 15000.0,
                1e-12 * 1e-3 / 15000.0);
  }
}

}  // namespace
}  // namespace mecsim

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

#include <cstdint>
#include <cstring>

#include <gtest/gtest.h>

#include "mecsim/controller.h"
#include "mecsim/errors.h"
#include "mecsim/model.h"

namespace mecsim {
namespace {

std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t sample_hash(const std::vector<SlotRecord>& records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : records) {
    const auto& s = r.sample;
    h = hash_bytes(h, s.positions.data(), s.positions.size() * sizeof(double));
    h = hash_bytes(h, s.gains.data(), s.gains.size() * sizeof(double));
    h = hash_bytes(h, s.arrivals.data(), s.arrivals.size() * sizeof(double));
  }
  return h;
}

SimConfig short_config(int horizon = 400) {
  SimConfig cfg;
  cfg.horizon = horizon;
  return cfg;
}

TEST(Run, EmptyHorizon) {
  SimConfig cfg = short_config(0);
  const RunResult res = run(cfg, Policy{});
  EXPECT_TRUE(res.records.empty());
  EXPECT_EQ(res.summary.slots, 0);
  EXPECT_FALSE(res.summary.network_ee.has_value());
  EXPECT_FALSE(res.summary.average_delay.has_value());
}

TEST(Run, InvalidConfigIsRejected) {
  SimConfig cfg = short_config();
  cfg.min_bandwidth_share = 0.5;
  try {
    run(cfg, Policy{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  }
}

// One device next to one server with unit fading and fixed arrivals; the
// first three slots were stepped by hand.
TEST(Run, SinglePairHandSteppedTrajectory) {
  SimConfig cfg = short_config(3);
  cfg.num_devices = cfg.num_servers = 1;
  cfg.area_side = 0.5;  // every distance is below the reference distance
  cfg.max_step = 0.0;
  cfg.fading = FadingModel::kUnit;
  cfg.arrival_min = cfg.arrival_max = 1500.0;
  const RunResult res = run(cfg, Policy{});
  ASSERT_EQ(res.records.size(), 3u);
  struct Expected {
    double c, f, p, ql, qo, eta;
  };
  const Expected want[3] = {
      {0.5, 0.0, 0.0, 750.0, 750.0, 0.0},
      {0.5, 184114923.57966468, 0.01082021176685651, 1250.352645993675, 750.0,
       4.85741173225982e-10},
      {0.333215784668775, 242298481.78265962, 0.011520988148625223,
       1421.6360087152652, 1000.1763229968375, 5.1570190301212e-10},
  };
  auto near = [](double got, double expected) {
    return std::abs(got - expected) <= 1e-9 * std::abs(expected) + 1e-300;
  };
  for (int t = 0; t < 3; ++t) {
    const SlotRecord& r = res.records[t];
    EXPECT_TRUE(near(r.decision.partition(0), want[t].c)) << t;
    EXPECT_TRUE(near(r.decision.frequency(0), want[t].f)) << t;
    EXPECT_TRUE(near(r.decision.power(0), want[t].p)) << t;
    EXPECT_TRUE(near(r.local_after(0), want[t].ql)) << t;
    EXPECT_TRUE(near(r.offload_after(0), want[t].qo)) << t;
  }
  EXPECT_TRUE(near(res.summary.final_eta, want[2].eta));
  EXPECT_EQ(res.records[2].before.eta, want[1].eta);
}

TEST(Run, SameSeedIsBitIdentical) {
  const SimConfig cfg = short_config();
  for (PolicyKind kind : kAllPolicies) {
    const RunResult a = run(cfg, Policy{kind, 1});
    const RunResult b = run(cfg, Policy{kind, 1});
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t t = 0; t < a.records.size(); ++t) {
      ASSERT_EQ(a.records[t].decision.power, b.records[t].decision.power);
      ASSERT_EQ(a.records[t].decision.share, b.records[t].decision.share);
      ASSERT_EQ(a.records[t].decision.assoc, b.records[t].decision.assoc);
      ASSERT_EQ(a.records[t].local_after, b.records[t].local_after);
      ASSERT_EQ(a.records[t].offload_after, b.records[t].offload_after);
    }
    EXPECT_EQ(a.summary.network_ee, b.summary.network_ee);
  }
}

TEST(Run, EnvironmentIsCommonAcrossPoliciesAndWeights) {
  SimConfig cfg = short_config();
  const std::uint64_t reference = sample_hash(run(cfg, Policy{}).records);
  for (PolicyKind kind : kAllPolicies) {
    EXPECT_EQ(sample_hash(run(cfg, Policy{kind, 3}).records), reference);
  }
  cfg.control_weight = 1e9;
  EXPECT_EQ(sample_hash(run(cfg, Policy{}).records), reference);
}

TEST(Run, SummaryIsRecomputableFromRecords) {
  const SimConfig cfg = short_config();
  const RunResult res = run(cfg, Policy{});
  const RunSummary again = summarize(res.records, cfg);
  EXPECT_EQ(again.slots, res.summary.slots);
  EXPECT_EQ(again.network_ee, res.summary.network_ee);
  EXPECT_EQ(again.average_delay, res.summary.average_delay);
  EXPECT_EQ(again.average_energy, res.summary.average_energy);
  EXPECT_EQ(again.average_bits, res.summary.average_bits);
  EXPECT_EQ(again.average_backlog, res.summary.average_backlog);
  EXPECT_EQ(again.final_local, res.summary.final_local);
  EXPECT_EQ(again.final_offload, res.summary.final_offload);
  EXPECT_EQ(*res.summary.network_ee, network_ee(res.records));
}

TEST(Run, StreamingSummaryMatchesKeptRecords) {
  const SimConfig cfg = short_config();
  const RunResult kept = run(cfg, Policy{});
  const RunResult streamed = run(cfg, Policy{}, RunOptions{false, true});
  EXPECT_TRUE(streamed.records.empty());
  EXPECT_EQ(streamed.summary.network_ee, kept.summary.network_ee);
  EXPECT_EQ(streamed.summary.average_backlog, kept.summary.average_backlog);
}

TEST(Baselines, CompleteLocalNeverOffloads) {
  const RunResult res = run(short_config(), Policy{PolicyKind::kCompleteLocal, 1});
  for (const auto& r : res.records) {
    ASSERT_TRUE(r.offload_after.isZero());
    ASSERT_EQ(r.decision.assoc.sum(), 0);
    ASSERT_TRUE(r.decision.power.isZero());
  }
}

TEST(Baselines, CompleteOffloadNeverComputesLocally) {
  const RunResult res =
      run(short_config(), Policy{PolicyKind::kCompleteOffload, 2});
  for (const auto& r : res.records) {
    ASSERT_TRUE(r.local_after.isZero());
    ASSERT_TRUE(r.decision.frequency.isZero());
  }
}

TEST(Baselines, RandomBinaryRoutesWholeArrivals) {
  const RunResult res = run(short_config(), Policy{PolicyKind::kRandomBinary, 3});
  int local = 0, total = 0;
  for (const auto& r : res.records) {
    for (int u = 0; u < r.decision.partition.size(); ++u) {
      const double c = r.decision.partition(u);
      ASSERT_TRUE(c == 0.0 || c == 1.0);
      local += c == 1.0;
      ++total;
    }
  }
  EXPECT_NEAR(local / static_cast<double>(total), 0.5, 0.03);
}

TEST(Baselines, RandomAssociationServerFrequencies) {
  SimConfig cfg = short_config(10000);
  const RunResult res = run(cfg, Policy{PolicyKind::kRandomAssociation, 4});
  Matrix freq = Matrix::Zero(cfg.num_devices, cfg.num_servers);
  for (const auto& r : res.records) freq += r.decision.assoc.cast<double>();
  freq /= cfg.horizon;
  for (int k = 0; k < freq.size(); ++k) EXPECT_NEAR(freq(k), 1.0 / 3.0, 0.02);
}

TEST(Audit, EveryPolicyStaysFeasible) {
  // run() audits each slot; rerun the auditor explicitly as well.
  const SimConfig cfg = short_config(300);
  for (PolicyKind kind : kAllPolicies) {
    const RunResult res = run(cfg, Policy{kind, 5});
    for (const auto& r : res.records) {
      ASSERT_NO_THROW(audit_decision(r.decision, cfg));
    }
  }
}

TEST(Audit, RejectsAnOverloadedServer) {
  SimConfig cfg = short_config();
  Decision d = Decision::idle(cfg.num_devices, cfg.num_servers);
  for (int u = 0; u < 5; ++u) {
    d.assoc(u, 0) = 1;
    d.share(u, 0) = 0.2;
  }
  try {
    audit_decision(d, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintViolation);
  }
}

TEST(Policies, NamesRoundTrip) {
  for (PolicyKind kind : kAllPolicies) {
    EXPECT_EQ(parse_policy(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_policy("greedy").has_value());
}

}  // namespace
}  // namespace mecsim

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

#ifndef MECSIM_CONTROLLER_H_
#define MECSIM_CONTROLLER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mecsim/config.h"
#include "mecsim/gauss_seidel.h"
#include "mecsim/rng.h"
#include "mecsim/types.h"

namespace mecsim {

enum class PolicyKind {
  kOoraa,
  kCompleteLocal,
  kCompleteOffload,
  kRandomBinary,
  kRandomAssociation,
};

inline constexpr std::array<PolicyKind, 5> kAllPolicies = {
    PolicyKind::kOoraa, PolicyKind::kCompleteLocal,
    PolicyKind::kCompleteOffload, PolicyKind::kRandomBinary,
    PolicyKind::kRandomAssociation};

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct Policy {
  PolicyKind kind = PolicyKind::kOoraa;
  std::uint64_t stream = 0;  // policy randomness substream
};

struct SlotDecision {
  Decision decision;
  std::vector<double> trail;  // offload objective per iteration, may be empty
};

// Online drift-plus-penalty control: closed-form partition and frequency,
// then the alternating offload solver.
SlotDecision ooraa_decide(const SolverContext& ctx, Rng& rng);

// Reference policies sharing the OORAA continuous solvers:
//   kCompleteLocal     all arrivals local, frequency by the closed form, no
//                      offloading;
//   kCompleteOffload   all arrivals to the offload queue, CPU idle, full
//                      offload stack;
//   kRandomBinary      each device routes its whole arrival locally or to the
//                      offload queue with probability 1/2;
//   kRandomAssociation uniform random feasible association, everything else
//                      as OORAA.
SlotDecision baseline_decide(PolicyKind kind, const SolverContext& ctx,
                             Rng& rng);

SlotDecision decide(PolicyKind kind, const SolverContext& ctx, Rng& rng);

// Throws kConstraintViolation if any per-slot constraint fails.
void audit_decision(const Decision& decision, const SimConfig& cfg);

// Per-slot objective minimized by the online controller:
//   V E - sum (V eta + Q^l) D^l - sum (V eta + Q^o) D^o
//       + sum (Q^l c - Q^o c + c^2 A - c A) A
double slot_objective(const QueueState& before, const Decision& decision,
                      const SlotOutcome& outcome, const Vector& arrivals,
                      double control_weight);

struct RunSummary {
  int slots = 0;
  std::optional<double> network_ee;     // J/bit
  std::optional<double> average_delay;  // s
  double average_energy = 0.0;          // J/slot
  double average_bits = 0.0;            // bits/slot
  double average_backlog = 0.0;         // bits, summed over devices
  Vector final_local;
  Vector final_offload;
  double final_eta = 0.0;
};

// Streaming form of the summary; summarize() feeds records through it.
class SummaryAccumulator {
 public:
  explicit SummaryAccumulator(const SimConfig& cfg) : cfg_(cfg) {}
  void add(const SlotRecord& record);
  RunSummary finish() const;

 private:
  const SimConfig& cfg_;
  int slots_ = 0;
  double energy_ = 0.0;
  double bits_ = 0.0;
  double backlog_ = 0.0;
  Vector final_local_;
  Vector final_offload_;
  double final_eta_ = 0.0;
};

RunSummary summarize(std::span<const SlotRecord> records, const SimConfig& cfg);

struct RunResult {
  std::vector<SlotRecord> records;
  RunSummary summary;
};

struct RunOptions {
  bool keep_records = true;
  bool audit = true;
};

// Simulates cfg.horizon slots under `policy`. Solver failures are rethrown
// with the slot index in the message.
RunResult run(const SimConfig& cfg, const Policy& policy,
              const RunOptions& options = {});

}  // namespace mecsim

#endif  // MECSIM_CONTROLLER_H_

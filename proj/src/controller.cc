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

#include "mecsim/controller.h"

#include <string>

#include "mecsim/association.h"
#include "mecsim/environment.h"
#include "mecsim/errors.h"
#include "mecsim/model.h"
#include "mecsim/solvers.h"

namespace mecsim {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kOoraa:
      return "ooraa";
    case PolicyKind::kCompleteLocal:
      return "complete_local";
    case PolicyKind::kCompleteOffload:
      return "complete_offload";
    case PolicyKind::kRandomBinary:
      return "random_binary";
    case PolicyKind::kRandomAssociation:
      return "random_association";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (PolicyKind kind : kAllPolicies) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

int num_devices(const SolverContext& ctx) {
  return static_cast<int>(ctx.gains.rows());
}

Vector closed_form_frequency(const SolverContext& ctx) {
  Vector f(num_devices(ctx));
  for (int u = 0; u < f.size(); ++u) {
    f(u) = solve_frequency(ctx.q_local(u), ctx.eta, ctx.control_weight, ctx.cfg);
  }
  return f;
}

Vector closed_form_partition(const SolverContext& ctx) {
  Vector c(num_devices(ctx));
  for (int u = 0; u < c.size(); ++u) {
    c(u) = solve_partition(ctx.q_local(u), ctx.q_offload(u), ctx.arrivals(u));
  }
  return c;
}

SlotDecision with_offload(Vector partition, Vector frequency,
                          OffloadPlan plan) {
  SlotDecision out;
  out.decision.partition = std::move(partition);
  out.decision.frequency = std::move(frequency);
  out.decision.assoc = std::move(plan.assoc);
  out.decision.share = std::move(plan.share);
  out.decision.power = std::move(plan.power);
  out.trail = std::move(plan.trail);
  return out;
}

}  // namespace

SlotDecision ooraa_decide(const SolverContext& ctx, Rng& rng) {
  return with_offload(closed_form_partition(ctx), closed_form_frequency(ctx),
                      gauss_seidel_offload(ctx, rng));
}

SlotDecision baseline_decide(PolicyKind kind, const SolverContext& ctx,
                             Rng& rng) {
  const int n = num_devices(ctx);
  switch (kind) {
    case PolicyKind::kCompleteLocal: {
      SlotDecision out;
      out.decision = Decision::idle(n, static_cast<int>(ctx.gains.cols()));
      out.decision.partition = Vector::Ones(n);
      out.decision.frequency = closed_form_frequency(ctx);
      return out;
    }
    case PolicyKind::kCompleteOffload:
      return with_offload(Vector::Zero(n), Vector::Zero(n),
                          gauss_seidel_offload(ctx, rng));
    case PolicyKind::kRandomBinary: {
      Vector c(n);
      for (int u = 0; u < n; ++u) c(u) = rng.coin() ? 1.0 : 0.0;
      return with_offload(std::move(c), closed_form_frequency(ctx),
                          gauss_seidel_offload(ctx, rng));
    }
    case PolicyKind::kRandomAssociation: {
      const AssocMatrix assoc =
          random_association(n, static_cast<int>(ctx.gains.cols()),
                             ctx.cfg.max_devices_per_server, rng);
      return with_offload(
          closed_form_partition(ctx), closed_form_frequency(ctx),
          gauss_seidel_offload(ctx, rng, AssociationMode::kFixed, &assoc));
    }
    case PolicyKind::kOoraa:
      return ooraa_decide(ctx, rng);
  }
  return ooraa_decide(ctx, rng);
}

SlotDecision decide(PolicyKind kind, const SolverContext& ctx, Rng& rng) {
  if (kind == PolicyKind::kOoraa) return ooraa_decide(ctx, rng);
  return baseline_decide(kind, ctx, rng);
}

void audit_decision(const Decision& d, const SimConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConstraintViolation, what);
  };
  if ((d.partition.array() < 0.0).any() || (d.partition.array() > 1.0).any()) {
    fail("partition outside [0, 1]");
  }
  if ((d.frequency.array() < 0.0).any() ||
      (d.frequency.array() > cfg.max_frequency).any()) {
    fail("frequency outside [0, max_frequency]");
  }
  if ((d.power.array() < 0.0).any() ||
      (d.power.array() > cfg.max_power).any()) {
    fail("power outside [0, max_power]");
  }
  if (!is_independent(d.assoc, cfg.max_devices_per_server)) {
    fail("association violates a per-device or per-server limit");
  }
  for (Eigen::Index m = 0; m < d.assoc.cols(); ++m) {
    double total = 0.0;
    for (Eigen::Index u = 0; u < d.assoc.rows(); ++u) {
      const double a = d.share(u, m);
      if (d.assoc(u, m) == 0) {
        if (a != 0.0) fail("share assigned to an unassociated pair");
        continue;
      }
      if (a < cfg.min_bandwidth_share * (1.0 - 1e-12)) {
        fail("share below the minimum for server " + std::to_string(m));
      }
      total += a;
    }
    if (total > 1.0 + cfg.bandwidth_tolerance) {
      fail("band over-allocated on server " + std::to_string(m));
    }
  }
}

double slot_objective(const QueueState& before, const Decision& decision,
                      const SlotOutcome& outcome, const Vector& arrivals,
                      double control_weight) {
  const double v = control_weight;
  double total = v * outcome.total_energy;
  for (Eigen::Index u = 0; u < arrivals.size(); ++u) {
    const double c = decision.partition(u);
    const double a = arrivals(u);
    const double ql = before.local(u);
    const double qo = before.offload(u);
    total -= (v * before.eta + ql) * outcome.local_bits(u);
    total -= (v * before.eta + qo) * outcome.offload_bits(u);
    total += (ql * c - qo * c + c * c * a - c * a) * a;
  }
  return total;
}

void SummaryAccumulator::add(const SlotRecord& record) {
  ++slots_;
  energy_ += record.outcome.total_energy;
  bits_ += record.outcome.total_bits;
  backlog_ += record.before.local.sum() + record.before.offload.sum();
  final_local_ = record.local_after;
  final_offload_ = record.offload_after;
  final_eta_ = record.before.bits_sum + record.outcome.total_bits > 0.0
                   ? (record.before.energy_sum + record.outcome.total_energy) /
                         (record.before.bits_sum + record.outcome.total_bits)
                   : 0.0;
}

RunSummary SummaryAccumulator::finish() const {
  RunSummary s;
  s.slots = slots_;
  s.final_local = final_local_.size() ? final_local_
                                      : Vector::Zero(cfg_.num_devices);
  s.final_offload = final_offload_.size() ? final_offload_
                                          : Vector::Zero(cfg_.num_devices);
  s.final_eta = final_eta_;
  if (slots_ == 0) return s;
  const double slots = static_cast<double>(slots_);
  s.average_energy = energy_ / slots;
  s.average_bits = bits_ / slots;
  s.average_backlog = backlog_ / slots;
  if (bits_ > 0.0) s.network_ee = energy_ / bits_;
  const double rate = cfg_.num_devices * cfg_.mean_arrival();
  if (rate > 0.0) s.average_delay = s.average_backlog / rate * cfg_.slot_length;
  return s;
}

RunSummary summarize(std::span<const SlotRecord> records,
                     const SimConfig& cfg) {
  SummaryAccumulator acc(cfg);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

RunResult run(const SimConfig& cfg, const Policy& policy,
              const RunOptions& options) {
  validate(cfg);
  Environment env(cfg);
  Rng policy_rng(cfg.seed, Stream::kPolicy, policy.stream);
  QueueState q = QueueState::zeros(cfg.num_devices);
  SummaryAccumulator acc(cfg);
  RunResult result;
  if (options.keep_records) result.records.reserve(cfg.horizon);

  for (int t = 0; t < cfg.horizon; ++t) {
    SlotRecord rec;
    rec.slot = t;
    rec.sample = env.next();
    rec.before = q;
    SlotDecision sd;
    try {
      const SolverContext ctx{q.local,          q.offload,
                              q.eta,            cfg.control_weight,
                              rec.sample.arrivals, rec.sample.gains,
                              cfg};
      sd = decide(policy.kind, ctx, policy_rng);
      if (options.audit) audit_decision(sd.decision, cfg);
    } catch (const Error& e) {
      throw Error(e.code(), "slot " + std::to_string(t) + ": " + e.what());
    }
    rec.decision = std::move(sd.decision);
    rec.offload_trail = std::move(sd.trail);
    rec.outcome = evaluate_slot(rec.decision, rec.sample, cfg);

    QueueState next =
        advance_queues(q, rec.decision, rec.outcome.local_bits,
                       rec.outcome.offload_bits, rec.sample.arrivals);
    next = update_eta(next, rec.outcome.total_energy, rec.outcome.total_bits);
    rec.local_after = next.local;
    rec.offload_after = next.offload;
    rec.objective = slot_objective(rec.before, rec.decision, rec.outcome,
                                   rec.sample.arrivals, cfg.control_weight);
    q = std::move(next);

    acc.add(rec);
    if (options.keep_records) result.records.push_back(std::move(rec));
  }
  result.summary = acc.finish();
  return result;
}

}  // namespace mecsim

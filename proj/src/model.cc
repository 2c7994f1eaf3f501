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

#include "mecsim/model.h"

#include "mecsim/errors.h"

namespace mecsim {

SlotOutcome evaluate_slot(const Decision& decision, const SlotSample& sample,
                          const SimConfig& cfg) {
  const int num_devices = static_cast<int>(decision.frequency.size());
  SlotOutcome out;
  out.local_bits.resize(num_devices);
  out.offload_bits.resize(num_devices);
  out.local_energy.resize(num_devices);
  out.offload_energy.resize(num_devices);
  for (int u = 0; u < num_devices; ++u) {
    const double f = decision.frequency(u);
    out.local_bits(u) = local_bits(f, cfg);
    out.local_energy(u) = local_energy(f, cfg);
    double offloaded = 0.0;
    for (int m = 0; m < decision.assoc.cols(); ++m) {
      if (decision.assoc(u, m) == 0) continue;
      offloaded += offload_rate(sample.gains(u, m), decision.power(u),
                                decision.share(u, m), cfg) *
                   cfg.slot_length;
    }
    out.offload_bits(u) = offloaded;
    out.offload_energy(u) = offload_energy(decision.power(u), cfg);
    out.total_energy += out.local_energy(u) + out.offload_energy(u);
    out.total_bits += out.local_bits(u) + out.offload_bits(u);
  }
  return out;
}

QueueState advance_queues(const QueueState& q, const Decision& decision,
                          const Vector& local_bits, const Vector& offload_bits,
                          const Vector& arrivals) {
  const auto& c = decision.partition.array();
  QueueState next = q;
  next.local = (q.local - local_bits).cwiseMax(0.0).array() + c * arrivals.array();
  next.offload = (q.offload - offload_bits).cwiseMax(0.0).array() +
                 (1.0 - c) * arrivals.array();
  return next;
}

QueueState update_eta(const QueueState& q, double energy, double bits) {
  QueueState next = q;
  next.energy_sum += energy;
  next.bits_sum += bits;
  next.eta = next.bits_sum > 0.0 ? next.energy_sum / next.bits_sum : 0.0;
  return next;
}

double network_ee(std::span<const SlotRecord> records) {
  double energy = 0.0;
  double bits = 0.0;
  for (const auto& r : records) {
    energy += r.outcome.total_energy;
    bits += r.outcome.total_bits;
  }
  if (!(bits > 0.0)) {
    throw Error(ErrorCode::kAllZeroThroughput,
                "no bits were processed over the horizon");
  }
  return energy / bits;
}

double average_backlog(std::span<const SlotRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyHorizon, "no slots recorded");
  }
  double total = 0.0;
  for (const auto& r : records) {
    total += r.before.local.sum() + r.before.offload.sum();
  }
  return total / static_cast<double>(records.size());
}

double average_delay(std::span<const SlotRecord> records,
                     const SimConfig& cfg) {
  const double rate = cfg.num_devices * cfg.mean_arrival();
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::kZeroArrivalRate, "mean arrival rate is zero");
  }
  return average_backlog(records) / rate * cfg.slot_length;
}

}  // namespace mecsim

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

#ifndef MECSIM_MODEL_H_
#define MECSIM_MODEL_H_

#include <cmath>
#include <numbers>
#include <span>

#include "mecsim/config.h"
#include "mecsim/types.h"

namespace mecsim {

// Shannon rate in bits/s of a device using `share` of the band with transmit
// power `power` over a channel of power gain `gain`. Zero share, zero rate.
template <typename Scalar>
Scalar offload_rate(Scalar gain, Scalar power, Scalar share,
                    const SimConfig& cfg) {
  if (share <= Scalar(0)) return Scalar(0);
  const Scalar band = share * Scalar(cfg.bandwidth);
  const Scalar noise = Scalar(cfg.interference) + band * Scalar(cfg.noise_psd);
  return band * std::log2(Scalar(1) + gain * power / noise);
}

// d rate / d share for a fixed received signal `signal` = gain * power.
template <typename Scalar>
Scalar rate_share_slope(Scalar signal, Scalar share, const SimConfig& cfg) {
  const Scalar w = Scalar(cfg.bandwidth);
  const Scalar k = w * Scalar(cfg.noise_psd);
  const Scalar noise = Scalar(cfg.interference) + share * k;
  return w * (std::log2(Scalar(1) + signal / noise) -
              share * signal * k /
                  (Scalar(std::numbers::ln2) * noise * (noise + signal)));
}

// d^2 rate / d share^2; strictly negative whenever signal > 0.
template <typename Scalar>
Scalar rate_share_curvature(Scalar signal, Scalar share, const SimConfig& cfg) {
  const Scalar w = Scalar(cfg.bandwidth);
  const Scalar k = w * Scalar(cfg.noise_psd);
  const Scalar noise = Scalar(cfg.interference) + share * k;
  const Scalar total = noise + signal;
  return -(w * signal * k / Scalar(std::numbers::ln2)) *
         (Scalar(2) * noise * total - share * k * (Scalar(2) * noise + signal)) /
         (noise * noise * total * total);
}

template <typename Scalar>
Scalar local_bits(Scalar frequency, const SimConfig& cfg) {
  return Scalar(cfg.slot_length) * frequency / Scalar(cfg.cycles_per_bit);
}

template <typename Scalar>
Scalar local_energy(Scalar frequency, const SimConfig& cfg) {
  return Scalar(cfg.slot_length) * Scalar(cfg.switched_capacitance) *
         frequency * frequency * frequency;
}

template <typename Scalar>
Scalar offload_energy(Scalar power, const SimConfig& cfg) {
  return power * Scalar(cfg.slot_length);
}

// Bits, energies and totals produced by a decision on a sample.
SlotOutcome evaluate_slot(const Decision& decision, const SlotSample& sample,
                          const SimConfig& cfg);

// Queue evolution with [.]^+ truncation of the served amount.
QueueState advance_queues(const QueueState& q, const Decision& decision,
                          const Vector& local_bits, const Vector& offload_bits,
                          const Vector& arrivals);

// Accumulates one slot into the running energy-per-bit estimate.
QueueState update_eta(const QueueState& q, double energy, double bits);

// Total energy over total processed bits. Throws kAllZeroThroughput.
double network_ee(std::span<const SlotRecord> records);

// Time-averaged total backlog over the mean arrival rate, in seconds.
// Throws kEmptyHorizon or kZeroArrivalRate.
double average_delay(std::span<const SlotRecord> records,
                     const SimConfig& cfg);

// Time-averaged sum over devices of local plus offload backlog (bits).
double average_backlog(std::span<const SlotRecord> records);

}  // namespace mecsim

#endif  // MECSIM_MODEL_H_

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

#ifndef MECSIM_ENVIRONMENT_H_
#define MECSIM_ENVIRONMENT_H_

#include "mecsim/config.h"
#include "mecsim/rng.h"
#include "mecsim/types.h"

namespace mecsim {

// Moves `from` by `length` along `heading` (radians) inside [0, side]^2,
// mirroring at the walls as many times as needed.
Position reflect_step(const Position& from, double heading, double length,
                      double side);

// One random-walk step per device: uniform heading, uniform length in
// [0, cfg.max_step], reflective boundary.
Positions step_mobility(const Positions& positions, Rng& rng,
                        const SimConfig& cfg);

// Mean power gain g0 (d0/d)^theta with d floored at d0.
double path_gain(double distance, const SimConfig& cfg);

// Path loss times unit-mean exponential fading, i.i.d. per pair.
Matrix sample_channel(const Positions& devices, const Positions& servers,
                      Rng& rng, const SimConfig& cfg);

// Uniform on [arrival_min, arrival_max] per device.
Vector sample_arrivals(Rng& rng, const SimConfig& cfg);

// Uniform placement in the square area.
Positions sample_positions(int count, Rng& rng, const SimConfig& cfg);

// Owns the environment substreams of one run. Servers are placed once;
// devices start uniformly and walk from the second slot on.
class Environment {
 public:
  explicit Environment(const SimConfig& cfg);

  const Positions& servers() const { return servers_; }
  SlotSample next();

 private:
  const SimConfig& cfg_;
  Rng mobility_rng_;
  Rng fading_rng_;
  Rng arrival_rng_;
  Positions servers_;
  Positions devices_;
  bool first_ = true;
};

}  // namespace mecsim

#endif  // MECSIM_ENVIRONMENT_H_

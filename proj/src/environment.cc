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

#include "mecsim/environment.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mecsim {

namespace {

// Folds an unconstrained coordinate back into [0, side].
double fold(double v, double side) {
  const double period = 2.0 * side;
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  return r <= side ? r : period - r;
}

}  // namespace

Position reflect_step(const Position& from, double heading, double length,
                      double side) {
  return {fold(from.x() + length * std::cos(heading), side),
          fold(from.y() + length * std::sin(heading), side)};
}

Positions step_mobility(const Positions& positions, Rng& rng,
                        const SimConfig& cfg) {
  Positions next(2, positions.cols());
  for (Eigen::Index u = 0; u < positions.cols(); ++u) {
    const double heading = 2.0 * std::numbers::pi * rng.uniform();
    const double length = cfg.max_step * rng.uniform();
    next.col(u) = reflect_step(positions.col(u), heading, length, cfg.area_side);
  }
  return next;
}

double path_gain(double distance, const SimConfig& cfg) {
  const double d = std::max(distance, cfg.ref_distance);
  return cfg.path_loss_ref * std::pow(cfg.ref_distance / d, cfg.path_loss_exp);
}

Matrix sample_channel(const Positions& devices, const Positions& servers,
                      Rng& rng, const SimConfig& cfg) {
  Matrix gains(devices.cols(), servers.cols());
  for (Eigen::Index u = 0; u < devices.cols(); ++u) {
    for (Eigen::Index m = 0; m < servers.cols(); ++m) {
      const double fading =
          cfg.fading == FadingModel::kRayleigh ? rng.exponential() : 1.0;
      gains(u, m) =
          fading * path_gain((devices.col(u) - servers.col(m)).norm(), cfg);
    }
  }
  return gains;
}

Vector sample_arrivals(Rng& rng, const SimConfig& cfg) {
  Vector a(cfg.num_devices);
  for (int u = 0; u < cfg.num_devices; ++u) {
    a(u) = rng.uniform(cfg.arrival_min, cfg.arrival_max);
  }
  return a;
}

Positions sample_positions(int count, Rng& rng, const SimConfig& cfg) {
  Positions p(2, count);
  for (int i = 0; i < count; ++i) {
    p(0, i) = rng.uniform(0.0, cfg.area_side);
    p(1, i) = rng.uniform(0.0, cfg.area_side);
  }
  return p;
}

Environment::Environment(const SimConfig& cfg)
    : cfg_(cfg),
      mobility_rng_(cfg.seed, Stream::kMobility),
      fading_rng_(cfg.seed, Stream::kFading),
      arrival_rng_(cfg.seed, Stream::kArrivals) {
  Rng placement(cfg.seed, Stream::kServers);
  servers_ = sample_positions(cfg.num_servers, placement, cfg);
  devices_ = sample_positions(cfg.num_devices, placement, cfg);
}

SlotSample Environment::next() {
  if (!first_) devices_ = step_mobility(devices_, mobility_rng_, cfg_);
  first_ = false;
  SlotSample s;
  s.positions = devices_;
  s.gains = sample_channel(devices_, servers_, fading_rng_, cfg_);
  s.arrivals = sample_arrivals(arrival_rng_, cfg_);
  return s;
}

}  // namespace mecsim

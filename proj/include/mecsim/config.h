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

#ifndef MECSIM_CONFIG_H_
#define MECSIM_CONFIG_H_

#include <cmath>
#include <cstdint>

namespace mecsim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return db_to_linear(dbm) * 1e-3; }

enum class FadingModel { kRayleigh, kUnit };

// Physical and algorithmic constants of one simulation. All quantities are
// stored in linear SI units; dB inputs are converted by the config parser.
struct SimConfig {
  // Topology.
  int num_servers = 3;
  int num_devices = 10;
  int max_devices_per_server = 4;
  double area_side = 100.0;  // m

  // Radio.
  double slot_length = 1e-3;                   // s
  double bandwidth = 1e6;                      // Hz
  double noise_psd = dbm_to_watt(-174.0);      // W/Hz
  double interference = 1e-13;                 // W
  double path_loss_ref = db_to_linear(-40.0);  // linear gain at ref_distance
  double ref_distance = 1.0;                   // m
  double path_loss_exp = 4.0;
  double max_power = 1.0;  // W

  // Local computing.
  double switched_capacitance = 1e-28;  // J s^2 / cycle^3
  double cycles_per_bit = 737.5;
  double max_frequency = 2.15e9;  // Hz

  // Task arrivals, bits per slot per device.
  double arrival_min = 1000.0;
  double arrival_max = 2000.0;

  // Drift-plus-penalty weight on the energy term.
  double control_weight = 1e11;

  int horizon = 20000;  // slots
  std::uint64_t seed = 1;

  // Random walk.
  double max_step = 1.0;  // m per slot
  FadingModel fading = FadingModel::kRayleigh;

  // Solver knobs.
  double bandwidth_tolerance = 1e-7;
  double min_bandwidth_share = 1e-4;
  int max_lagrange_iterations = 200;
  int max_gauss_seidel_iterations = 20;
  double gauss_seidel_threshold = 1e-6;
  double root_tolerance = 1e-10;

  // Mean arrival per device and slot.
  double mean_arrival() const { return 0.5 * (arrival_min + arrival_max); }
  // Noise power seen on a share of the band.
  double noise_power(double share) const {
    return share * bandwidth * noise_psd;
  }
};

// Throws Error(kValidationError) naming the first offending field.
void validate(const SimConfig& cfg);

}  // namespace mecsim

#endif  // MECSIM_CONFIG_H_

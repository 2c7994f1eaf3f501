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

#ifndef MECSIM_EXPERIMENT_H_
#define MECSIM_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mecsim/analysis.h"
#include "mecsim/config.h"
#include "mecsim/controller.h"

namespace mecsim {

struct ArrivalRange {
  double min = 0.0;
  double max = 0.0;
  bool operator==(const ArrivalRange&) const = default;
};

// A base configuration plus the axes whose cross product is simulated.
struct ExperimentSpec {
  SimConfig base;
  std::vector<double> control_weights;
  std::vector<ArrivalRange> arrivals;
  std::vector<int> devices;
  std::vector<int> servers;
  std::vector<PolicyKind> policies;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir;
  bool trace = false;
  int jobs = 1;
  double epsilon_proxy = 100.0;   // bits/slot
  double warmup_fraction = 0.1;

  // Number of rows summary.csv will hold.
  std::size_t num_points() const {
    return control_weights.size() * arrivals.size() * devices.size() *
           servers.size() * policies.size();
  }
};

// Spec with every field at its documented default and single-valued axes
// taken from the base configuration.
ExperimentSpec default_spec();

// Parses `key = value` lines ('#' starts a comment). Numeric values may carry
// a unit: dB for gains; W, mW, dBm, dBW for powers; W/Hz, dBm/Hz (or dBmHz)
// for the noise density; Hz, kHz, MHz, GHz; s, ms, us; m. Values are
// converted to linear SI units here. Each override is one more `key=value`
// line applied after the text. Throws kParseError naming the line and key, or
// kValidationError naming the field.
ExperimentSpec parse_config_text(std::string_view text,
                                 const std::vector<std::string>& overrides = {});
ExperimentSpec parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides = {});

// Canonical text form; parse_config_text(format_config(s)) reproduces s.
std::string format_config(const ExperimentSpec& spec);

// 17 significant digits, the precision every CSV float is written with.
std::string format_double(double value);

struct ExperimentReport {
  std::size_t runs = 0;
  std::size_t summary_rows = 0;
  std::vector<LabeledRun> labeled;
  std::vector<SweepPoint> points;
  std::vector<std::filesystem::path> files;
};

// Runs the full axes x seeds cross product (spec.jobs worker threads) and
// writes summary.csv, bounds.csv, manifest.json and, if spec.trace,
// trace.csv into spec.output_dir. Output bytes depend only on the ExperimentSpec.
// A failing run is rethrown with its axis values in the message.
ExperimentReport run_experiment(const ExperimentSpec& spec);

}  // namespace mecsim

#endif  // MECSIM_EXPERIMENT_H_

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

#include "mecsim/config.h"

#include <string>

#include "mecsim/errors.h"

namespace mecsim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAllZeroThroughput:
      return "AllZeroThroughput";
    case ErrorCode::kZeroArrivalRate:
      return "ZeroArrivalRate";
    case ErrorCode::kEmptyHorizon:
      return "EmptyHorizon";
    case ErrorCode::kNoAssociation:
      return "NoAssociation";
    case ErrorCode::kBracketFailure:
      return "BracketFailure";
    case ErrorCode::kDegenerateDenominator:
      return "DegenerateDenominator";
    case ErrorCode::kConstraintViolation:
      return "ConstraintViolation";
    case ErrorCode::kNonMonotoneObjective:
      return "NonMonotoneObjective";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kValidationError:
      return "ValidationError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

namespace {

void require(bool ok, const char* field, const char* constraint) {
  if (!ok) {
    throw Error(ErrorCode::kValidationError,
                std::string(field) + " must satisfy " + constraint);
  }
}

}  // namespace

void validate(const SimConfig& cfg) {
  require(cfg.num_servers >= 1, "servers", ">= 1");
  require(cfg.num_devices >= 1, "devices", ">= 1");
  require(cfg.max_devices_per_server >= 1, "max_devices_per_server", ">= 1");
  require(cfg.area_side > 0, "area_side", "> 0");
  require(cfg.slot_length > 0, "slot_length", "> 0");
  require(cfg.bandwidth > 0, "bandwidth", "> 0");
  require(cfg.noise_psd > 0, "noise_psd", "> 0");
  require(cfg.interference > 0, "interference", "> 0");
  require(cfg.path_loss_ref > 0, "path_loss_ref", "> 0");
  require(cfg.ref_distance > 0, "ref_distance", "> 0");
  require(cfg.path_loss_exp >= 2, "path_loss_exp", ">= 2");
  require(cfg.max_power > 0, "max_power", "> 0");
  require(cfg.switched_capacitance > 0, "switched_capacitance", "> 0");
  require(cfg.cycles_per_bit > 0, "cycles_per_bit", "> 0");
  require(cfg.max_frequency > 0, "max_frequency", "> 0");
  require(cfg.arrival_min >= 0, "arrival_min", ">= 0");
  require(cfg.arrival_min <= cfg.arrival_max, "arrival_max",
          ">= arrival_min");
  require(cfg.control_weight > 0, "control_weight", "> 0");
  require(cfg.horizon >= 0, "horizon", ">= 0");
  require(cfg.max_step >= 0, "max_step", ">= 0");
  require(cfg.bandwidth_tolerance > 0, "bandwidth_tolerance", "> 0");
  require(cfg.min_bandwidth_share > 0 &&
              cfg.min_bandwidth_share < 1.0 / cfg.max_devices_per_server,
          "min_bandwidth_share", "in (0, 1/max_devices_per_server)");
  require(cfg.max_lagrange_iterations >= 1, "max_lagrange_iterations", ">= 1");
  require(cfg.max_gauss_seidel_iterations >= 1, "max_gauss_seidel_iterations",
          ">= 1");
  require(cfg.gauss_seidel_threshold > 0, "gauss_seidel_threshold", "> 0");
  require(cfg.root_tolerance > 0, "root_tolerance", "> 0");
}

}  // namespace mecsim

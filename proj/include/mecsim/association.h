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

#ifndef MECSIM_ASSOCIATION_H_
#define MECSIM_ASSOCIATION_H_

#include "mecsim/config.h"
#include "mecsim/rng.h"
#include "mecsim/types.h"

namespace mecsim {

// Ground set of association actions (u, m) with their marginal gains. Rows
// are the device blocks (at most one element each), columns the server blocks
// (at most `server_capacity` elements each).
struct MatroidGroundSet {
  Matrix weights;  // U x M, bits, non-negative
  int server_capacity = 1;

  int num_devices() const { return static_cast<int>(weights.rows()); }
  int num_servers() const { return static_cast<int>(weights.cols()); }
  // Ground elements are numbered server-major: (u, m) -> u + m U.
  int element(int device, int server) const {
    return device + server * num_devices();
  }
};

// Offloaded bits W_um of pair (u, m) if u were associated with m. Associated
// pairs use their current share and power. The others use 1/capacity of the
// band and, when `trial_power` is given, the power the device would pick on
// that pair (otherwise its current power).
MatroidGroundSet association_ground_set(const Matrix& gains,
                                        const Vector& power,
                                        const AssocMatrix& assoc,
                                        const Matrix& share,
                                        const SimConfig& cfg,
                                        const Matrix* trial_power = nullptr);

// Greedy selection over the intersection of the two partition matroids: take
// the heaviest feasible element (ties to the lowest device, then server),
// retire its device block, retire a server block once it is full, stop when
// nothing with positive weight remains.
AssocMatrix solve_association(const MatroidGroundSet& ground);

// Modular set value sum of W over the selected elements.
double association_value(const AssocMatrix& assoc, const Matrix& weights);

// Membership in both partition matroids.
bool is_independent(const AssocMatrix& assoc, int server_capacity);

// Uniformly random assignment among those associating as many devices as
// the server capacities allow.
AssocMatrix random_association(int num_devices, int num_servers,
                               int server_capacity, Rng& rng);

}  // namespace mecsim

#endif  // MECSIM_ASSOCIATION_H_

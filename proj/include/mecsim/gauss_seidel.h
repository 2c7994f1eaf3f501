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

#ifndef MECSIM_GAUSS_SEIDEL_H_
#define MECSIM_GAUSS_SEIDEL_H_

#include <vector>

#include "mecsim/config.h"
#include "mecsim/rng.h"
#include "mecsim/types.h"

namespace mecsim {

// Everything the per-slot solvers read.
struct SolverContext {
  Vector q_local;
  Vector q_offload;
  double eta = 0.0;
  double control_weight = 0.0;
  Vector arrivals;
  Matrix gains;
  const SimConfig& cfg;
};

struct OffloadPlan {
  AssocMatrix assoc;
  Matrix share;
  Vector power;
  // Offload objective at the start and after every iteration.
  std::vector<double> trail;
  int iterations = 0;
  bool converged = false;
};

enum class AssociationMode {
  kGreedy,  // association block re-optimized every iteration
  kFixed,   // association given by the caller, only power and bandwidth move
};

// sum_u V p_u tau - (Q^o_u + V eta) D^o_u for a candidate triple.
double offload_objective(const SolverContext& ctx, const AssocMatrix& assoc,
                         const Matrix& share, const Vector& power);

// Transmit powers for a given association and bandwidth split.
Vector power_block(const SolverContext& ctx, const AssocMatrix& assoc,
                   const Matrix& share);

// Bandwidth split of every server for a given association and powers.
Matrix bandwidth_block(const SolverContext& ctx, const AssocMatrix& assoc,
                       const Vector& power);

// Alternating minimization over (power, bandwidth, association), starting from
// a random feasible association and an even 1/N_max split. A block update is
// kept only if it does not raise the offload objective, so the trail is
// non-increasing; a closed-form block that raises it beyond 1e-9 relative
// throws kNonMonotoneObjective. Stops when an iteration improves by less than
// cfg.gauss_seidel_threshold (relative) or after
// cfg.max_gauss_seidel_iterations.
OffloadPlan gauss_seidel_offload(const SolverContext& ctx, Rng& rng,
                                 AssociationMode mode = AssociationMode::kGreedy,
                                 const AssocMatrix* fixed = nullptr);

}  // namespace mecsim

#endif  // MECSIM_GAUSS_SEIDEL_H_

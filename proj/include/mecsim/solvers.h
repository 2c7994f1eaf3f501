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

#ifndef MECSIM_SOLVERS_H_
#define MECSIM_SOLVERS_H_

#include "mecsim/config.h"
#include "mecsim/types.h"

namespace mecsim {

// Fraction of this slot's arrivals routed to the local queue. Minimizes the
// separable quadratic c^2 A + c (Q^l - Q^o - A) over [0, 1]; zero arrivals
// return 0 since the objective is then flat.
double solve_partition(double q_local, double q_offload, double arrivals);

// Local CPU frequency balancing the backlog-weighted throughput against the
// cubic energy cost, clipped at max_frequency.
double solve_frequency(double q_local, double eta, double control_weight,
                       const SimConfig& cfg);

// Transmit power minimizing -B tau log2(1 + gamma p) + V p tau on
// [0, max_power], where gamma = H / (chi + alpha w sigma^2) and
// B = (Q^o + V eta) alpha w. Throws kNoAssociation when gamma <= 0.
double solve_power(double gamma, double bit_weight, double control_weight,
                   const SimConfig& cfg);

struct LagrangeSearchState {
  double multiplier = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
  bool converged = false;
};

struct BandwidthAllocation {
  Vector share;
  LagrangeSearchState search;
};

// Splits one server's band among its associated devices so as to maximize
// sum_u w_u r_u(alpha_u) subject to alpha_u >= eps and sum alpha = 1 (within
// the configured tolerance). `queue_weight` holds w_u = (Q^o_u + V eta) tau
// and `signal` holds H_um p_u. Bisection on the multiplier of the budget with
// an inner bracketed root search per device. Throws kBracketFailure if the
// multiplier bracket cannot be made to straddle the root.
BandwidthAllocation solve_bandwidth(const Vector& queue_weight,
                                    const Vector& signal,
                                    const SimConfig& cfg);

// max(eps, g(lambda)) where g solves w dr/dalpha = lambda on [eps, 1].
// `guess` seeds the root search and does not change the result beyond the
// root tolerance.
double share_for_multiplier(double queue_weight, double signal,
                            double multiplier, const SimConfig& cfg,
                            double guess = -1.0);

// -sum_u w_u r_u(alpha_u), the quantity solve_bandwidth minimizes.
double bandwidth_objective(const Vector& queue_weight, const Vector& signal,
                           const Vector& share, const SimConfig& cfg);

}  // namespace mecsim

#endif  // MECSIM_SOLVERS_H_

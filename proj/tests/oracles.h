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

// Brute-force references for the closed-form solvers. Nothing here calls
// into the library's solvers; the formulas are re-typed from the model.

#ifndef MECSIM_TESTS_ORACLES_H_
#define MECSIM_TESTS_ORACLES_H_

#include <functional>
#include <vector>

#include "mecsim/config.h"
#include "mecsim/types.h"

namespace oracle {

using mecsim::AssocMatrix;
using mecsim::Matrix;
using mecsim::SimConfig;
using mecsim::Vector;

// Minimizer of a unimodal function on [lo, hi]: a uniform grid, then
// repeated zooming around the best point.
double grid_minimize(const std::function<double(double)>& f, double lo,
                     double hi, int points = 10001, int zooms = 6);

double rate(double gain, double power, double share, const SimConfig& cfg);

double partition_objective(double q_local, double q_offload, double arrivals,
                           double c);
// Best of a plain grid over [0, 1].
double partition_grid(double q_local, double q_offload, double arrivals,
                      int points = 1000001);

double frequency_objective(double q_local, double eta, double v,
                           const SimConfig& cfg, double f);
double frequency_search(double q_local, double eta, double v,
                        const SimConfig& cfg);

// tau (V p - B log2(1 + gamma p)).
double power_objective(double gamma, double bit_weight, double v,
                       const SimConfig& cfg, double p);
double power_search(double gamma, double bit_weight, double v,
                    const SimConfig& cfg);

// -sum w_u r_u(alpha_u) from the received signals s_u = H p.
double bandwidth_value(const Vector& weight, const Vector& signal,
                       const Vector& share, const SimConfig& cfg);
// Simplex search with every share >= eps and the shares summing to one:
// a grid of step `step` for up to three devices, then a pattern search.
Vector bandwidth_search(const Vector& weight, const Vector& signal,
                        const SimConfig& cfg, double step = 1e-3);

// Largest total weight over every assignment that respects both capacities.
double association_optimum(const Matrix& weights, int server_capacity);
// Calls `visit` with every feasible assignment.
void for_each_assignment(int devices, int servers, int server_capacity,
                         const std::function<void(const AssocMatrix&)>& visit);

// sum_u V p tau - (Q^o + V eta) tau r_u.
double offload_objective(const Vector& q_offload, double eta, double v,
                         const Matrix& gains, const AssocMatrix& assoc,
                         const Matrix& share, const Vector& power,
                         const SimConfig& cfg);
// Best offload objective over all feasible associations, each with power and
// bandwidth refined by alternating the oracles above.
double offload_optimum(const Vector& q_offload, double eta, double v,
                       const Matrix& gains, const SimConfig& cfg);

// Element-by-element queue update written as a plain loop.
void advance_reference(const std::vector<double>& q_local,
                       const std::vector<double>& q_offload,
                       const std::vector<double>& partition,
                       const std::vector<double>& d_local,
                       const std::vector<double>& d_offload,
                       const std::vector<double>& arrivals,
                       std::vector<double>& out_local,
                       std::vector<double>& out_offload);

}  // namespace oracle

#endif  // MECSIM_TESTS_ORACLES_H_

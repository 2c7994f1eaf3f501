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

#include "mecsim/gauss_seidel.h"

#include <cmath>
#include <string>

#include "mecsim/association.h"
#include "mecsim/errors.h"
#include "mecsim/model.h"
#include "mecsim/solvers.h"

namespace mecsim {

namespace {

constexpr double kMonotoneSlack = 1e-9;

double queue_weight(const SolverContext& ctx, Eigen::Index u) {
  return (ctx.q_offload(u) + ctx.control_weight * ctx.eta) *
         ctx.cfg.slot_length;
}

bool no_worse(double candidate, double incumbent) {
  return candidate <= incumbent;
}

void check_monotone(double candidate, double incumbent, const char* block) {
  const double scale = std::max(std::abs(candidate), std::abs(incumbent));
  if (candidate > incumbent + kMonotoneSlack * scale) {
    throw Error(ErrorCode::kNonMonotoneObjective,
                std::string(block) + " block raised the offload objective");
  }
}

Matrix even_split(const AssocMatrix& assoc, const SimConfig& cfg) {
  return assoc.cast<double>() / static_cast<double>(cfg.max_devices_per_server);
}

// Power each device would choose on each server with the provisional share.
Matrix trial_powers(const SolverContext& ctx) {
  const SimConfig& cfg = ctx.cfg;
  const double a = 1.0 / cfg.max_devices_per_server;
  const double noise = cfg.interference + cfg.noise_power(a);
  Matrix out(ctx.gains.rows(), ctx.gains.cols());
  for (Eigen::Index u = 0; u < out.rows(); ++u) {
    const double bit_weight =
        (ctx.q_offload(u) + ctx.control_weight * ctx.eta) * a * cfg.bandwidth;
    for (Eigen::Index m = 0; m < out.cols(); ++m) {
      const double gamma = ctx.gains(u, m) / noise;
      out(u, m) = gamma > 0.0
                      ? solve_power(gamma, bit_weight, ctx.control_weight, cfg)
                      : 0.0;
    }
  }
  return out;
}

}  // namespace

double offload_objective(const SolverContext& ctx, const AssocMatrix& assoc,
                         const Matrix& share, const Vector& power) {
  const SimConfig& cfg = ctx.cfg;
  double total = 0.0;
  for (Eigen::Index u = 0; u < assoc.rows(); ++u) {
    double bits = 0.0;
    for (Eigen::Index m = 0; m < assoc.cols(); ++m) {
      if (assoc(u, m) == 0) continue;
      bits += offload_rate(ctx.gains(u, m), power(u), share(u, m), cfg) *
              cfg.slot_length;
    }
    total += ctx.control_weight * offload_energy(power(u), cfg) -
             (ctx.q_offload(u) + ctx.control_weight * ctx.eta) * bits;
  }
  return total;
}

Vector power_block(const SolverContext& ctx, const AssocMatrix& assoc,
                   const Matrix& share) {
  const SimConfig& cfg = ctx.cfg;
  Vector power = Vector::Zero(assoc.rows());
  for (Eigen::Index u = 0; u < assoc.rows(); ++u) {
    for (Eigen::Index m = 0; m < assoc.cols(); ++m) {
      if (assoc(u, m) == 0) continue;
      const double a = share(u, m);
      const double gamma = ctx.gains(u, m) / (cfg.interference + cfg.noise_power(a));
      const double bit_weight =
          (ctx.q_offload(u) + ctx.control_weight * ctx.eta) * a * cfg.bandwidth;
      power(u) = solve_power(gamma, bit_weight, ctx.control_weight, cfg);
      break;
    }
  }
  return power;
}

Matrix bandwidth_block(const SolverContext& ctx, const AssocMatrix& assoc,
                       const Vector& power) {
  Matrix share = Matrix::Zero(assoc.rows(), assoc.cols());
  std::vector<Eigen::Index> members;
  for (Eigen::Index m = 0; m < assoc.cols(); ++m) {
    members.clear();
    for (Eigen::Index u = 0; u < assoc.rows(); ++u) {
      if (assoc(u, m) != 0) members.push_back(u);
    }
    if (members.empty()) continue;
    const auto n = static_cast<Eigen::Index>(members.size());
    Vector weight(n);
    Vector signal(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      weight(i) = queue_weight(ctx, members[i]);
      signal(i) = ctx.gains(members[i], m) * power(members[i]);
    }
    const BandwidthAllocation alloc = solve_bandwidth(weight, signal, ctx.cfg);
    for (Eigen::Index i = 0; i < n; ++i) share(members[i], m) = alloc.share(i);
  }
  return share;
}

OffloadPlan gauss_seidel_offload(const SolverContext& ctx, Rng& rng,
                                 AssociationMode mode,
                                 const AssocMatrix* fixed) {
  const SimConfig& cfg = ctx.cfg;
  const int num_devices = static_cast<int>(ctx.gains.rows());
  const int num_servers = static_cast<int>(ctx.gains.cols());

  OffloadPlan plan;
  plan.assoc = (mode == AssociationMode::kFixed && fixed != nullptr)
                   ? *fixed
                   : random_association(num_devices, num_servers,
                                        cfg.max_devices_per_server, rng);
  plan.share = even_split(plan.assoc, cfg);
  plan.power = Vector::Zero(num_devices);
  double current = offload_objective(ctx, plan.assoc, plan.share, plan.power);
  plan.trail.push_back(current);
  const Matrix trial = mode == AssociationMode::kGreedy
                           ? trial_powers(ctx)
                           : Matrix::Zero(num_devices, num_servers);

  for (int k = 1; k <= cfg.max_gauss_seidel_iterations; ++k) {
    plan.iterations = k;
    const double previous = current;

    Vector power = power_block(ctx, plan.assoc, plan.share);
    const double after_power =
        offload_objective(ctx, plan.assoc, plan.share, power);
    check_monotone(after_power, current, "power");
    plan.power = std::move(power);
    current = after_power;

    Matrix share = bandwidth_block(ctx, plan.assoc, plan.power);
    const double after_share =
        offload_objective(ctx, plan.assoc, share, plan.power);
    if (no_worse(after_share, current)) {
      plan.share = std::move(share);
      current = after_share;
    }

    if (mode == AssociationMode::kGreedy) {
      const AssocMatrix assoc = solve_association(association_ground_set(
          ctx.gains, plan.power, plan.assoc, plan.share, cfg, &trial));
      if (assoc != plan.assoc) {
        // Settle power and bandwidth on the new association before comparing:
        // kept pairs start from their share, new pairs from 1/N_max.
        Matrix start = Matrix::Zero(num_devices, num_servers);
        for (int u = 0; u < num_devices; ++u) {
          for (int m = 0; m < num_servers; ++m) {
            if (assoc(u, m) == 0) continue;
            start(u, m) = plan.assoc(u, m) != 0
                              ? plan.share(u, m)
                              : 1.0 / cfg.max_devices_per_server;
          }
        }
        Vector moved_power = power_block(ctx, assoc, start);
        Matrix resplit = bandwidth_block(ctx, assoc, moved_power);
        double after_assoc = offload_objective(ctx, assoc, resplit, moved_power);
        for (int inner = 1; inner < cfg.max_gauss_seidel_iterations; ++inner) {
          Vector p2 = power_block(ctx, assoc, resplit);
          Matrix a2 = bandwidth_block(ctx, assoc, p2);
          const double j2 = offload_objective(ctx, assoc, a2, p2);
          if (!(j2 < after_assoc)) break;
          const bool small = std::abs(after_assoc - j2) <=
                             cfg.gauss_seidel_threshold * std::abs(after_assoc);
          moved_power = std::move(p2);
          resplit = std::move(a2);
          after_assoc = j2;
          if (small) break;
        }
        if (no_worse(after_assoc, current)) {
          plan.assoc = assoc;
          plan.share = std::move(resplit);
          plan.power = std::move(moved_power);
          current = after_assoc;
        }
      }
    }

    plan.trail.push_back(current);
    if (std::abs(previous - current) <=
        cfg.gauss_seidel_threshold * std::abs(previous)) {
      plan.converged = true;
      break;
    }
  }
  return plan;
}

}  // namespace mecsim

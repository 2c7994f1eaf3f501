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

#include "mecsim/association.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "mecsim/model.h"

namespace mecsim {

MatroidGroundSet association_ground_set(const Matrix& gains,
                                        const Vector& power,
                                        const AssocMatrix& assoc,
                                        const Matrix& share,
                                        const SimConfig& cfg,
                                        const Matrix* trial_power) {
  MatroidGroundSet ground;
  ground.server_capacity = cfg.max_devices_per_server;
  ground.weights.resize(gains.rows(), gains.cols());
  const double provisional = 1.0 / cfg.max_devices_per_server;
  for (Eigen::Index u = 0; u < gains.rows(); ++u) {
    for (Eigen::Index m = 0; m < gains.cols(); ++m) {
      const bool linked = assoc(u, m) != 0;
      const double a = linked ? share(u, m) : provisional;
      const double p =
          (linked || trial_power == nullptr) ? power(u) : (*trial_power)(u, m);
      ground.weights(u, m) = offload_rate(gains(u, m), p, a, cfg) * cfg.slot_length;
    }
  }
  return ground;
}

AssocMatrix solve_association(const MatroidGroundSet& ground) {
  const int num_devices = ground.num_devices();
  const int num_servers = ground.num_servers();
  AssocMatrix selected = AssocMatrix::Zero(num_devices, num_servers);
  std::vector<bool> device_open(num_devices, true);
  std::vector<int> load(num_servers, 0);
  while (true) {
    int best_u = -1;
    int best_m = -1;
    double best = 0.0;
    for (int u = 0; u < num_devices; ++u) {
      if (!device_open[u]) continue;
      for (int m = 0; m < num_servers; ++m) {
        if (load[m] >= ground.server_capacity) continue;
        if (ground.weights(u, m) > best) {
          best = ground.weights(u, m);
          best_u = u;
          best_m = m;
        }
      }
    }
    if (best_u < 0) break;
    selected(best_u, best_m) = 1;
    device_open[best_u] = false;
    ++load[best_m];
  }
  return selected;
}

double association_value(const AssocMatrix& assoc, const Matrix& weights) {
  double total = 0.0;
  for (Eigen::Index m = 0; m < assoc.cols(); ++m) {
    for (Eigen::Index u = 0; u < assoc.rows(); ++u) {
      if (assoc(u, m) != 0) total += weights(u, m);
    }
  }
  return total;
}

bool is_independent(const AssocMatrix& assoc, int server_capacity) {
  if ((assoc.array() < 0).any() || (assoc.array() > 1).any()) return false;
  return (assoc.rowwise().sum().array() <= 1).all() &&
         (assoc.colwise().sum().array() <= server_capacity).all();
}

AssocMatrix random_association(int num_devices, int num_servers,
                               int server_capacity, Rng& rng) {
  const int assigned = std::min(num_devices, num_servers * server_capacity);

  std::vector<int> order(num_devices);
  std::iota(order.begin(), order.end(), 0);
  for (int i = num_devices - 1; i > 0; --i) {
    std::swap(order[i], order[rng.index(i + 1)]);
  }

  // ways[k][r]: labelled assignments of r devices onto k servers within
  // capacity. Drawing per-server counts with these weights and then filling
  // servers from the shuffled order is uniform over assignments.
  std::vector<std::vector<long double>> choose(assigned + 1);
  for (int r = 0; r <= assigned; ++r) {
    choose[r].assign(r + 1, 1.0L);
    for (int n = 1; n < r; ++n) {
      choose[r][n] = choose[r - 1][n - 1] + choose[r - 1][n];
    }
  }
  std::vector<std::vector<long double>> ways(
      num_servers + 1, std::vector<long double>(assigned + 1, 0.0L));
  ways[0][0] = 1.0L;
  for (int k = 1; k <= num_servers; ++k) {
    for (int r = 0; r <= assigned; ++r) {
      long double w = 0.0L;
      for (int n = 0; n <= std::min(server_capacity, r); ++n) {
        w += choose[r][n] * ways[k - 1][r - n];
      }
      ways[k][r] = w;
    }
  }

  AssocMatrix assoc = AssocMatrix::Zero(num_devices, num_servers);
  int remaining = assigned;
  int cursor = 0;
  for (int m = 0; m < num_servers; ++m) {
    const int servers_left = num_servers - m;
    int count = 0;
    if (servers_left == 1) {
      count = remaining;
    } else {
      long double target = static_cast<long double>(rng.uniform()) *
                           ways[servers_left][remaining];
      const int top = std::min(server_capacity, remaining);
      for (count = 0; count < top; ++count) {
        const long double w =
            choose[remaining][count] * ways[servers_left - 1][remaining - count];
        if (target < w) break;
        target -= w;
      }
    }
    for (int i = 0; i < count; ++i) assoc(order[cursor++], m) = 1;
    remaining -= count;
  }
  return assoc;
}

}  // namespace mecsim

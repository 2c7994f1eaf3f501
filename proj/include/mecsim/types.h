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

#ifndef MECSIM_TYPES_H_
#define MECSIM_TYPES_H_

#include <vector>

#include <Eigen/Dense>

namespace mecsim {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Rows are devices, columns are servers; entries are 0 or 1.
using AssocMatrix = Eigen::MatrixXi;
using Position = Eigen::Vector2d;
// One column per node.
using Positions = Eigen::Matrix2Xd;

// Exogenous randomness of one slot.
struct SlotSample {
  Positions positions;  // devices
  Matrix gains;         // U x M linear power gains
  Vector arrivals;      // bits
};

// Per-device backlogs plus the running energy-efficiency accumulators.
struct QueueState {
  Vector local;    // bits
  Vector offload;  // bits
  double energy_sum = 0.0;  // J
  double bits_sum = 0.0;    // bits
  double eta = 0.0;         // J/bit

  static QueueState zeros(int num_devices) {
    QueueState q;
    q.local = Vector::Zero(num_devices);
    q.offload = Vector::Zero(num_devices);
    return q;
  }
};

// Control tuple for one slot.
struct Decision {
  Vector partition;   // fraction of arrivals routed to the local queue
  AssocMatrix assoc;  // U x M
  Matrix share;       // U x M fraction of the server band
  Vector power;       // W
  Vector frequency;   // Hz

  static Decision idle(int num_devices, int num_servers) {
    Decision d;
    d.partition = Vector::Zero(num_devices);
    d.assoc = AssocMatrix::Zero(num_devices, num_servers);
    d.share = Matrix::Zero(num_devices, num_servers);
    d.power = Vector::Zero(num_devices);
    d.frequency = Vector::Zero(num_devices);
    return d;
  }

  // Index of the associated server or -1.
  int server_of(int device) const {
    for (int m = 0; m < assoc.cols(); ++m) {
      if (assoc(device, m) != 0) return m;
    }
    return -1;
  }
};

struct SlotOutcome {
  Vector local_bits;
  Vector offload_bits;
  Vector local_energy;
  Vector offload_energy;
  double total_energy = 0.0;
  double total_bits = 0.0;
};

struct SlotRecord {
  int slot = 0;
  SlotSample sample;
  QueueState before;  // queues and eta in force during the slot
  Decision decision;
  SlotOutcome outcome;
  Vector local_after;
  Vector offload_after;
  double objective = 0.0;  // per-slot drift-plus-penalty bound objective
  std::vector<double> offload_trail;  // offload objective per iteration
};

}  // namespace mecsim

#endif  // MECSIM_TYPES_H_

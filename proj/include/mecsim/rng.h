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

#ifndef MECSIM_RNG_H_
#define MECSIM_RNG_H_

#include <cstdint>
#include <random>

namespace mecsim {

// Independent purposes drawing from one master seed. Keeping them apart means
// a policy change never perturbs the environment stream.
enum class Stream : std::uint64_t {
  kServers = 1,
  kMobility = 2,
  kFading = 3,
  kArrivals = 4,
  kPolicy = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

// Portable variates on top of mt19937_64: the conversions are spelled out so
// that streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0)
      : engine_(splitmix64(splitmix64(seed) ^
                           splitmix64(static_cast<std::uint64_t>(stream) +
                                      (substream << 8)))) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Exp(1).
  double exponential();
  // Uniform integer on [0, n).
  int index(int n);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mecsim

#endif  // MECSIM_RNG_H_

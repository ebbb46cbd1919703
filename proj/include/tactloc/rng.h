// Copyright 2026 The tactloc Authors.
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

#ifndef TACTLOC_RNG_H_
#define TACTLOC_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace tactloc {

// Counter-based seed derivation: the stream for (root, k1, k2, ...) depends
// only on those integers, never on how many draws happened elsewhere.
std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<std::uint64_t> keys);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t root, std::initializer_list<std::uint64_t> keys)
      : engine_(derive_seed(root, keys)) {}

  // Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n);
  // Uniform double in [0, 1).
  double uniform();
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tactloc

#endif  // TACTLOC_RNG_H_

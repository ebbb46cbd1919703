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

#ifndef TACTLOC_GRADCHECK_H_
#define TACTLOC_GRADCHECK_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tactloc/autodiff.h"
#include "tactloc/param_set.h"

namespace tactloc {

// Builds a scalar loss on a fresh graph from the given parameters. Must be
// deterministic.
using LossBuilder = std::function<Var(Graph&, const ParamSet&)>;

struct GradCheckEntry {
  std::string name;
  std::size_t entries = 0;
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t failures = 0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> parameters;
  double max_relative_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

// |a - f| / max(|a|, |f|, 1e-8).
double relative_error(double analytic, double numeric);

// Compares reverse-mode gradients of `loss` against central differences
// (loss(theta + h) - loss(theta - h)) / 2h for every trainable scalar entry.
// Throws std::invalid_argument for h <= 0 or tol <= 0, std::runtime_error if
// the loss is non-finite at a perturbed point.
GradCheckReport finite_difference_check(const LossBuilder& loss,
                                        const ParamSet& params, double h,
                                        double tol);

}  // namespace tactloc

#endif  // TACTLOC_GRADCHECK_H_

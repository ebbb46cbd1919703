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

#include "tactloc/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tactloc {
namespace {

double evaluate(const LossBuilder& loss, const ParamSet& params) {
  Graph g;
  const Var root = loss(g, params);
  if (g.value(root).size() != 1) {
    throw std::invalid_argument("gradcheck: loss must be scalar");
  }
  return g.value(root).item();
}

}  // namespace

double relative_error(double analytic, double numeric) {
  const double denom =
      std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

GradCheckReport finite_difference_check(const LossBuilder& loss,
                                        const ParamSet& params, double h,
                                        double tol) {
  if (!(h > 0.0)) throw std::invalid_argument("gradcheck: h must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("gradcheck: tol must be > 0");

  Graph g;
  const Var root = loss(g, params);
  const auto analytic = reverse_mode_gradients(g, root, params);

  GradCheckReport report;
  report.tolerance = tol;
  ParamSet probe = params;
  for (const auto& [name, grad] : analytic) {
    const Tensor original = params.get(name);
    GradCheckEntry entry;
    entry.name = name;
    entry.entries = original.size();
    std::vector<double> values(original.values());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      double up = 0.0;
      double down = 0.0;
      try {
        values[i] = saved + h;
        probe.set(name, Tensor(original.shape(), values));
        up = evaluate(loss, probe);
        values[i] = saved - h;
        probe.set(name, Tensor(original.shape(), values));
        down = evaluate(loss, probe);
      } catch (const std::invalid_argument& e) {
        // Tensors reject NaN/Inf, so a blown-up perturbation surfaces here.
        throw std::runtime_error("gradcheck: non-finite loss while perturbing " +
                                 name + "[" + std::to_string(i) + "]: " +
                                 e.what());
      }
      values[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw std::runtime_error("gradcheck: non-finite loss while perturbing " +
                                 name + "[" + std::to_string(i) + "]");
      }
      const double numeric = (up - down) / (2.0 * h);
      const double err = relative_error(grad[i], numeric);
      if (err > entry.max_relative_error) {
        entry.max_relative_error = err;
        entry.worst_index = i;
      }
      if (err > tol) ++entry.failures;
    }
    probe.set(name, original);
    report.max_relative_error =
        std::max(report.max_relative_error, entry.max_relative_error);
    if (entry.failures > 0) report.passed = false;
    report.parameters.push_back(std::move(entry));
  }
  return report;
}

}  // namespace tactloc

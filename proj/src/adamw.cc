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

#include "tactloc/adamw.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tactloc {
namespace {

void validate(const AdamWOptions& o) {
  if (!(o.lr >= 0.0) || !std::isfinite(o.lr)) {
    throw std::invalid_argument("adamw: lr must be >= 0");
  }
  if (!(o.beta1 > 0.0 && o.beta1 < 1.0) || !(o.beta2 > 0.0 && o.beta2 < 1.0)) {
    throw std::invalid_argument("adamw: betas must lie in (0, 1)");
  }
  if (!(o.eps > 0.0)) throw std::invalid_argument("adamw: eps must be > 0");
  if (!(o.weight_decay >= 0.0)) {
    throw std::invalid_argument("adamw: weight_decay must be >= 0");
  }
}

}  // namespace

void adamw_step(ParamSet& params, const std::map<std::string, Tensor>& grads,
                const AdamWOptions& options) {
  validate(options);
  for (const auto& [name, g] : grads) {
    if (!params.contains(name)) {
      throw std::invalid_argument("adamw: gradient for unknown parameter '" +
                                  name + "'");
    }
    if (!params.trainable(name)) {
      throw std::logic_error("adamw: gradient supplied for frozen parameter '" +
                             name + "'");
    }
    if (g.shape() != params.get(name).shape()) {
      throw std::invalid_argument("adamw: gradient shape mismatch for '" +
                                  name + "'");
    }
  }
  for (const std::string& name : params.trainable_names()) {
    auto it = grads.find(name);
    if (it == grads.end()) {
      throw std::invalid_argument("adamw: missing gradient for '" + name + "'");
    }
    const auto g = it->second.data();
    const Tensor& theta = params.get(name);
    const OptimizerState& old = params.state(name);

    OptimizerState next;
    next.step = old.step + 1;
    const double t = static_cast<double>(next.step);
    const double bc1 = 1.0 - std::pow(options.beta1, t);
    const double bc2 = 1.0 - std::pow(options.beta2, t);

    std::vector<double> value(theta.values());
    std::vector<double> m(old.first_moment.values());
    std::vector<double> v(old.second_moment.values());
    for (std::size_t i = 0; i < value.size(); ++i) {
      value[i] -= options.lr * options.weight_decay * value[i];
      m[i] = options.beta1 * m[i] + (1.0 - options.beta1) * g[i];
      v[i] = options.beta2 * v[i] + (1.0 - options.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      value[i] -= options.lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
    next.first_moment = Tensor(theta.shape(), std::move(m));
    next.second_moment = Tensor(theta.shape(), std::move(v));
    params.set(name, Tensor(theta.shape(), std::move(value)));
    params.set_state(name, std::move(next));
  }
}

}  // namespace tactloc

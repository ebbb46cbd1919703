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

#ifndef TACTLOC_ADAMW_H_
#define TACTLOC_ADAMW_H_

#include <map>
#include <string>

#include "tactloc/param_set.h"
#include "tactloc/tensor.h"

namespace tactloc {

struct AdamWOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.95;
  double eps = 1e-8;
  double weight_decay = 0.05;
};

// One AdamW update of every trainable parameter in `params`:
//   theta <- theta - lr * wd * theta
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)
// with bias-corrected moments. Frozen parameters and their state are left
// untouched.
//
// `grads` must hold exactly the trainable parameters. A gradient for a frozen
// parameter throws std::logic_error (it means a freeze schedule leaked);
// missing gradients, shape mismatches or out-of-range hyperparameters throw
// std::invalid_argument.
void adamw_step(ParamSet& params, const std::map<std::string, Tensor>& grads,
                const AdamWOptions& options);

}  // namespace tactloc

#endif  // TACTLOC_ADAMW_H_

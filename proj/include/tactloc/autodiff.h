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

#ifndef TACTLOC_AUTODIFF_H_
#define TACTLOC_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tactloc/param_set.h"
#include "tactloc/tensor.h"

namespace tactloc {

// Handle to a node of a Graph.
struct Var {
  std::size_t id = 0;
};

// Inputs handed to a node's backward function. `input_grads[k]` accumulates
// d(root)/d(input k); implementations must add to it, never overwrite.
struct BackwardArgs {
  std::span<const double> out_grad;
  const Tensor& out_value;
  std::vector<const Tensor*> inputs;
  std::vector<std::span<double>> input_grads;
};

using BackwardFn = std::function<void(const BackwardArgs&)>;

struct GraphNode {
  std::string op;
  std::vector<std::size_t> parents;
  Tensor value;
  std::vector<double> grad;
  // Set for parameter leaves only.
  std::string param_name;
  bool trainable = false;
  BackwardFn backward;
};

// Append-only tape. Parents always precede their children, so evaluation
// order is the insertion order and backward walks it in reverse.
class Graph {
 public:
  // Leaf bound to a named parameter. Repeated calls with the same name return
  // the same node so gradients from every use accumulate in one place.
  Var parameter(const ParamSet& params, const std::string& name);
  Var constant(Tensor value);
  // Adds a node computed from `inputs`. `backward` may be empty for
  // operations with no gradient.
  Var apply(std::string op, const std::vector<Var>& inputs, Tensor value,
            BackwardFn backward);

  const Tensor& value(Var v) const { return node(v).value; }
  const GraphNode& node(Var v) const;
  std::size_t size() const { return nodes_.size(); }

  // Reverse sweep from a scalar root. Clears all previous gradients first, so
  // the graph can be swept again. Throws std::invalid_argument for a
  // non-scalar root and std::logic_error if a node references a parent that
  // does not precede it.
  void backward(Var root);
  Tensor gradient(Var v) const;

 private:
  std::vector<GraphNode> nodes_;
  std::map<std::string, std::size_t> parameter_nodes_;
};

// d(root)/d(param) for every trainable parameter of `params`. Trainable
// parameters absent from the graph, or unreachable from the root, get zeros;
// frozen parameters are omitted.
std::map<std::string, Tensor> reverse_mode_gradients(Graph& graph, Var root,
                                                     const ParamSet& params);

// Elementwise arithmetic on equal shapes.
Var add(Graph& g, Var a, Var b);
Var sub(Graph& g, Var a, Var b);
Var mul(Graph& g, Var a, Var b);
Var scale(Graph& g, Var a, double factor);
Var tanh(Graph& g, Var a);
// Sum of all entries (rank-0 result).
Var sum(Graph& g, Var a);
Var dot(Graph& g, Var a, Var b);

// Per-location linear map on a C_in x H x W input: out[:, h, w] =
// weight^T x[:, h, w] + bias, weight shaped C_in x C_out. This is a 1x1
// convolution.
Var pointwise_linear(Graph& g, Var x, Var weight, Var bias);

// Normalizes the C-vector at each (h, w) of a C x H x W input to zero mean and
// unit variance across channels, then applies per-channel gamma and beta.
// Throws on shape mismatch or eps <= 0.
Var channel_layernorm(Graph& g, Var x, Var gamma, Var beta, double eps);
Tensor channel_layernorm(const Tensor& x, const Tensor& gamma,
                         const Tensor& beta, double eps);

}  // namespace tactloc

#endif  // TACTLOC_AUTODIFF_H_

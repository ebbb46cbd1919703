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

#include "tactloc/autodiff.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tactloc {
namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                shape_string(a.shape()) + " vs " +
                                shape_string(b.shape()));
  }
}

struct LayerNormShape {
  std::size_t channels;
  std::size_t locations;
};

LayerNormShape check_layernorm(const Tensor& x, const Tensor& gamma,
                               const Tensor& beta, double eps) {
  if (x.rank() != 3) {
    throw std::invalid_argument("channel_layernorm: input must be CxHxW, got " +
                                shape_string(x.shape()));
  }
  const std::size_t c = x.dim(0);
  if (gamma.shape() != Shape{c} || beta.shape() != Shape{c}) {
    throw std::invalid_argument(
        "channel_layernorm: gamma/beta must have length " + std::to_string(c));
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("channel_layernorm: eps must be positive");
  }
  return {c, x.dim(1) * x.dim(2)};
}

// Normalized values and 1/sigma per location.
void layernorm_stats(const Tensor& x, const LayerNormShape& s, double eps,
                     std::vector<double>& xhat, std::vector<double>& inv_std) {
  const auto in = x.data();
  xhat.assign(in.size(), 0.0);
  inv_std.assign(s.locations, 0.0);
  for (std::size_t l = 0; l < s.locations; ++l) {
    double mean = 0.0;
    for (std::size_t c = 0; c < s.channels; ++c) mean += in[c * s.locations + l];
    mean /= static_cast<double>(s.channels);
    double var = 0.0;
    for (std::size_t c = 0; c < s.channels; ++c) {
      const double d = in[c * s.locations + l] - mean;
      var += d * d;
    }
    var /= static_cast<double>(s.channels);
    const double inv = 1.0 / std::sqrt(var + eps);
    inv_std[l] = inv;
    for (std::size_t c = 0; c < s.channels; ++c) {
      xhat[c * s.locations + l] = (in[c * s.locations + l] - mean) * inv;
    }
  }
}

}  // namespace

const GraphNode& Graph::node(Var v) const {
  if (v.id >= nodes_.size()) {
    throw std::out_of_range("graph node " + std::to_string(v.id) +
                            " does not exist");
  }
  return nodes_[v.id];
}

Var Graph::parameter(const ParamSet& params, const std::string& name) {
  if (auto it = parameter_nodes_.find(name); it != parameter_nodes_.end()) {
    return Var{it->second};
  }
  GraphNode n;
  n.op = "parameter";
  n.value = params.get(name);
  n.param_name = name;
  n.trainable = params.trainable(name);
  nodes_.push_back(std::move(n));
  parameter_nodes_[name] = nodes_.size() - 1;
  return Var{nodes_.size() - 1};
}

Var Graph::constant(Tensor value) {
  GraphNode n;
  n.op = "constant";
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

Var Graph::apply(std::string op, const std::vector<Var>& inputs, Tensor value,
                 BackwardFn backward) {
  GraphNode n;
  n.op = std::move(op);
  n.parents.reserve(inputs.size());
  for (Var v : inputs) {
    node(v);  // bounds check
    n.parents.push_back(v.id);
  }
  n.value = std::move(value);
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

void Graph::backward(Var root) {
  const GraphNode& r = node(root);
  if (r.value.size() != 1) {
    throw std::invalid_argument("backward needs a scalar root, got shape " +
                                shape_string(r.value.shape()));
  }
  std::vector<char> reachable(root.id + 1, 0);
  reachable[root.id] = 1;
  for (std::size_t i = root.id + 1; i-- > 0;) {
    if (!reachable[i]) continue;
    for (std::size_t p : nodes_[i].parents) {
      if (p >= i) throw std::logic_error("cycle detected in graph at node " +
                                         std::to_string(i));
      reachable[p] = 1;
    }
  }
  for (GraphNode& n : nodes_) n.grad.assign(n.value.size(), 0.0);
  nodes_[root.id].grad[0] = 1.0;

  for (std::size_t i = root.id + 1; i-- > 0;) {
    GraphNode& n = nodes_[i];
    if (!reachable[i] || !n.backward) continue;
    BackwardArgs args{n.grad, n.value, {}, {}};
    args.inputs.reserve(n.parents.size());
    args.input_grads.reserve(n.parents.size());
    for (std::size_t p : n.parents) {
      args.inputs.push_back(&nodes_[p].value);
      args.input_grads.emplace_back(nodes_[p].grad);
    }
    n.backward(args);
  }
}

Tensor Graph::gradient(Var v) const {
  const GraphNode& n = node(v);
  if (n.grad.size() != n.value.size()) return Tensor::zeros(n.value.shape());
  return Tensor(n.value.shape(), n.grad);
}

std::map<std::string, Tensor> reverse_mode_gradients(Graph& graph, Var root,
                                                     const ParamSet& params) {
  graph.backward(root);
  std::map<std::string, Tensor> grads;
  for (const std::string& name : params.trainable_names()) {
    grads.emplace(name, Tensor::zeros(params.get(name).shape()));
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const GraphNode& n = graph.node(Var{i});
    if (n.param_name.empty() || !n.trainable) continue;
    auto it = grads.find(n.param_name);
    if (it == grads.end()) continue;
    it->second = graph.gradient(Var{i});
  }
  return grads;
}

Var add(Graph& g, Var a, Var b) {
  const Tensor& x = g.value(a);
  const Tensor& y = g.value(b);
  require_same_shape(x, y, "add");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + y[i];
  return g.apply("add", {a, b}, Tensor(x.shape(), std::move(out)),
                 [](const BackwardArgs& args) {
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     args.input_grads[0][i] += args.out_grad[i];
                     args.input_grads[1][i] += args.out_grad[i];
                   }
                 });
}

Var sub(Graph& g, Var a, Var b) {
  const Tensor& x = g.value(a);
  const Tensor& y = g.value(b);
  require_same_shape(x, y, "sub");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - y[i];
  return g.apply("sub", {a, b}, Tensor(x.shape(), std::move(out)),
                 [](const BackwardArgs& args) {
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     args.input_grads[0][i] += args.out_grad[i];
                     args.input_grads[1][i] -= args.out_grad[i];
                   }
                 });
}

Var mul(Graph& g, Var a, Var b) {
  const Tensor& x = g.value(a);
  const Tensor& y = g.value(b);
  require_same_shape(x, y, "mul");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[i];
  return g.apply("mul", {a, b}, Tensor(x.shape(), std::move(out)),
                 [](const BackwardArgs& args) {
                   const Tensor& x = *args.inputs[0];
                   const Tensor& y = *args.inputs[1];
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     args.input_grads[0][i] += args.out_grad[i] * y[i];
                     args.input_grads[1][i] += args.out_grad[i] * x[i];
                   }
                 });
}

Var scale(Graph& g, Var a, double factor) {
  const Tensor& x = g.value(a);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * factor;
  return g.apply("scale", {a}, Tensor(x.shape(), std::move(out)),
                 [factor](const BackwardArgs& args) {
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     args.input_grads[0][i] += args.out_grad[i] * factor;
                   }
                 });
}

Var tanh(Graph& g, Var a) {
  const Tensor& x = g.value(a);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(x[i]);
  return g.apply("tanh", {a}, Tensor(x.shape(), std::move(out)),
                 [](const BackwardArgs& args) {
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     const double t = args.out_value[i];
                     args.input_grads[0][i] += args.out_grad[i] * (1.0 - t * t);
                   }
                 });
}

Var sum(Graph& g, Var a) {
  const Tensor& x = g.value(a);
  double total = 0.0;
  for (double v : x.data()) total += v;
  return g.apply("sum", {a}, Tensor::scalar(total),
                 [](const BackwardArgs& args) {
                   const double gout = args.out_grad[0];
                   for (double& gi : args.input_grads[0]) gi += gout;
                 });
}

Var dot(Graph& g, Var a, Var b) { return sum(g, mul(g, a, b)); }

Var pointwise_linear(Graph& g, Var x_var, Var w_var, Var b_var) {
  const Tensor& x = g.value(x_var);
  const Tensor& w = g.value(w_var);
  const Tensor& b = g.value(b_var);
  if (x.rank() != 3 || w.rank() != 2 || b.rank() != 1 || w.dim(0) != x.dim(0) ||
      b.dim(0) != w.dim(1)) {
    throw std::invalid_argument("pointwise_linear: incompatible shapes x=" +
                                shape_string(x.shape()) + " weight=" +
                                shape_string(w.shape()) + " bias=" +
                                shape_string(b.shape()));
  }
  const std::size_t cin = w.dim(0);
  const std::size_t cout = w.dim(1);
  const std::size_t hw = x.dim(1) * x.dim(2);
  std::vector<double> out(cout * hw);
  const auto xd = x.data();
  const auto wd = w.data();
  for (std::size_t o = 0; o < cout; ++o) {
    double* row = out.data() + o * hw;
    for (std::size_t l = 0; l < hw; ++l) row[l] = b[o];
    for (std::size_t i = 0; i < cin; ++i) {
      const double wio = wd[i * cout + o];
      const double* xi = xd.data() + i * hw;
      for (std::size_t l = 0; l < hw; ++l) row[l] += wio * xi[l];
    }
  }
  return g.apply(
      "pointwise_linear", {x_var, w_var, b_var},
      Tensor(Shape{cout, x.dim(1), x.dim(2)}, std::move(out)),
      [cin, cout, hw](const BackwardArgs& args) {
        const auto xd = args.inputs[0]->data();
        const auto wd = args.inputs[1]->data();
        const auto gout = args.out_grad;
        auto gx = args.input_grads[0];
        auto gw = args.input_grads[1];
        auto gb = args.input_grads[2];
        for (std::size_t o = 0; o < cout; ++o) {
          const double* go = gout.data() + o * hw;
          double bsum = 0.0;
          for (std::size_t l = 0; l < hw; ++l) bsum += go[l];
          gb[o] += bsum;
          for (std::size_t i = 0; i < cin; ++i) {
            const double* xi = xd.data() + i * hw;
            double* gxi = gx.data() + i * hw;
            const double wio = wd[i * cout + o];
            double acc = 0.0;
            for (std::size_t l = 0; l < hw; ++l) {
              acc += go[l] * xi[l];
              gxi[l] += go[l] * wio;
            }
            gw[i * cout + o] += acc;
          }
        }
      });
}

Tensor channel_layernorm(const Tensor& x, const Tensor& gamma,
                         const Tensor& beta, double eps) {
  const LayerNormShape s = check_layernorm(x, gamma, beta, eps);
  std::vector<double> xhat, inv_std;
  layernorm_stats(x, s, eps, xhat, inv_std);
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t l = 0; l < s.locations; ++l) {
      double& v = xhat[c * s.locations + l];
      v = gamma[c] * v + beta[c];
    }
  }
  return Tensor(x.shape(), std::move(xhat));
}

Var channel_layernorm(Graph& g, Var x_var, Var gamma_var, Var beta_var,
                      double eps) {
  const Tensor& x = g.value(x_var);
  Tensor out = channel_layernorm(x, g.value(gamma_var), g.value(beta_var), eps);
  const LayerNormShape s = check_layernorm(x, g.value(gamma_var),
                                           g.value(beta_var), eps);
  return g.apply(
      "channel_layernorm", {x_var, gamma_var, beta_var}, std::move(out),
      [s, eps](const BackwardArgs& args) {
        const Tensor& x = *args.inputs[0];
        const Tensor& gamma = *args.inputs[1];
        std::vector<double> xhat, inv_std;
        layernorm_stats(x, s, eps, xhat, inv_std);
        const auto gout = args.out_grad;
        auto gx = args.input_grads[0];
        auto ggamma = args.input_grads[1];
        auto gbeta = args.input_grads[2];
        const double inv_c = 1.0 / static_cast<double>(s.channels);
        for (std::size_t l = 0; l < s.locations; ++l) {
          double mean_g = 0.0;
          double mean_gx = 0.0;
          for (std::size_t c = 0; c < s.channels; ++c) {
            const std::size_t k = c * s.locations + l;
            const double gh = gout[k] * gamma[c];
            mean_g += gh;
            mean_gx += gh * xhat[k];
            ggamma[c] += gout[k] * xhat[k];
            gbeta[c] += gout[k];
          }
          mean_g *= inv_c;
          mean_gx *= inv_c;
          for (std::size_t c = 0; c < s.channels; ++c) {
            const std::size_t k = c * s.locations + l;
            const double gh = gout[k] * gamma[c];
            gx[k] += inv_std[l] * (gh - mean_g - xhat[k] * mean_gx);
          }
        }
      });
}

}  // namespace tactloc

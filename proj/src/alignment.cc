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

#include "tactloc/alignment.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tactloc/errors.h"

namespace tactloc {
namespace {

Tensor descriptor_tensor(const TactileDescriptor& d) {
  return Tensor(Shape{d.values.size()}, d.values);
}

void check_batch(std::size_t nt, std::size_t nv) {
  if (nt == 0) throw std::invalid_argument("empty batch");
  if (nt != nv) {
    throw std::invalid_argument("batch size mismatch: " + std::to_string(nt) +
                                " tactile vs " + std::to_string(nv) +
                                " visual");
  }
}

SimilarityPeak find_peak(const Tensor& map) {
  if (map.size() == 0) throw std::invalid_argument("empty similarity map");
  const std::size_t width = map.rank() == 2 ? map.dim(1) : map.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.size(); ++i) {
    if (map[i] > map[best]) best = i;
  }
  return {map[best], best / width, best % width};
}

}  // namespace

void LossConfig::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("temperature must be positive");
  }
}

Var spatial_mean(Graph& g, Var fmap) {
  const Tensor& x = g.value(fmap);
  if (x.rank() != 3) {
    throw std::invalid_argument("spatial_mean: expected CxHxW, got " +
                                shape_string(x.shape()));
  }
  const std::size_t c = x.dim(0);
  const std::size_t hw = x.dim(1) * x.dim(2);
  if (hw == 0) throw std::invalid_argument("spatial_mean: empty spatial extent");
  std::vector<double> out(c, 0.0);
  const auto xd = x.data();
  for (std::size_t k = 0; k < c; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < hw; ++l) s += xd[k * hw + l];
    out[k] = s / static_cast<double>(hw);
  }
  return g.apply("spatial_mean", {fmap}, Tensor(Shape{c}, std::move(out)),
                 [c, hw](const BackwardArgs& args) {
                   const double inv = 1.0 / static_cast<double>(hw);
                   for (std::size_t k = 0; k < c; ++k) {
                     const double gk = args.out_grad[k] * inv;
                     for (std::size_t l = 0; l < hw; ++l) {
                       args.input_grads[0][k * hw + l] += gk;
                     }
                   }
                 });
}

Var l2_normalize(Graph& g, Var x_var) {
  const Tensor& x = g.value(x_var);
  if (x.rank() != 1 && x.rank() != 3) {
    throw std::invalid_argument("l2_normalize: expected rank 1 or 3, got " +
                                shape_string(x.shape()));
  }
  const std::size_t c = x.dim(0);
  const std::size_t locs = x.size() / c;
  std::vector<double> out(x.size(), 0.0);
  std::vector<double> norms(locs, 0.0);
  const auto xd = x.data();
  for (std::size_t l = 0; l < locs; ++l) {
    double n2 = 0.0;
    for (std::size_t k = 0; k < c; ++k) n2 += xd[k * locs + l] * xd[k * locs + l];
    const double n = std::sqrt(n2);
    norms[l] = n;
    if (n == 0.0) continue;
    for (std::size_t k = 0; k < c; ++k) out[k * locs + l] = xd[k * locs + l] / n;
  }
  return g.apply(
      "l2_normalize", {x_var}, Tensor(x.shape(), std::move(out)),
      [c, locs, norms = std::move(norms)](const BackwardArgs& args) {
        const auto y = args.out_value.data();
        for (std::size_t l = 0; l < locs; ++l) {
          if (norms[l] == 0.0) continue;
          double proj = 0.0;
          for (std::size_t k = 0; k < c; ++k) {
            proj += y[k * locs + l] * args.out_grad[k * locs + l];
          }
          for (std::size_t k = 0; k < c; ++k) {
            const std::size_t i = k * locs + l;
            args.input_grads[0][i] += (args.out_grad[i] - y[i] * proj) / norms[l];
          }
        }
      });
}

Var similarity_map(Graph& g, Var desc_var, Var visual_var) {
  const Tensor& d = g.value(desc_var);
  const Tensor& v = g.value(visual_var);
  if (d.rank() != 1 || v.rank() != 3 || d.dim(0) != v.dim(0)) {
    throw std::invalid_argument("similarity_map: channel mismatch, descriptor " +
                                shape_string(d.shape()) + " vs feature map " +
                                shape_string(v.shape()));
  }
  const std::size_t c = v.dim(0);
  const std::size_t h = v.dim(1);
  const std::size_t w = v.dim(2);
  const std::size_t hw = h * w;
  std::vector<double> out(hw, 0.0);
  const auto vd = v.data();
  for (std::size_t k = 0; k < c; ++k) {
    const double dk = d[k];
    const double* vk = vd.data() + k * hw;
    for (std::size_t l = 0; l < hw; ++l) out[l] += dk * vk[l];
  }
  return g.apply(
      "similarity_map", {desc_var, visual_var},
      Tensor(Shape{h, w}, std::move(out)), [c, hw](const BackwardArgs& args) {
        const auto dd = args.inputs[0]->data();
        const auto vd = args.inputs[1]->data();
        const auto go = args.out_grad;
        for (std::size_t k = 0; k < c; ++k) {
          double acc = 0.0;
          const double* vk = vd.data() + k * hw;
          double* gvk = args.input_grads[1].data() + k * hw;
          for (std::size_t l = 0; l < hw; ++l) {
            acc += go[l] * vk[l];
            gvk[l] += go[l] * dd[k];
          }
          args.input_grads[0][k] += acc;
        }
      });
}

Var max_pool(Graph& g, Var map_var) {
  const Tensor& m = g.value(map_var);
  const SimilarityPeak peak = find_peak(m);
  const std::size_t width = m.rank() == 2 ? m.dim(1) : m.size();
  const std::size_t winner = peak.row * width + peak.col;
  return g.apply("max_pool", {map_var}, Tensor::scalar(peak.value),
                 [winner](const BackwardArgs& args) {
                   args.input_grads[0][winner] += args.out_grad[0];
                 });
}

Var stack(Graph& g, const std::vector<Var>& scalars, Shape shape) {
  if (shape_size(shape) != scalars.size()) {
    throw std::invalid_argument("stack: shape does not match input count");
  }
  std::vector<double> out;
  out.reserve(scalars.size());
  for (Var s : scalars) out.push_back(g.value(s).item());
  return g.apply("stack", scalars, Tensor(std::move(shape), std::move(out)),
                 [](const BackwardArgs& args) {
                   for (std::size_t i = 0; i < args.out_grad.size(); ++i) {
                     args.input_grads[i][0] += args.out_grad[i];
                   }
                 });
}

namespace {

// Row-softmax and column-softmax of S / tau, plus the loss.
struct InfoNceParts {
  double loss = 0.0;
  std::vector<double> row_prob;
  std::vector<double> col_prob;
};

InfoNceParts infonce_parts(const Tensor& s, double tau) {
  if (s.rank() != 2 || s.dim(0) != s.dim(1) || s.dim(0) == 0) {
    throw std::invalid_argument("symmetric_infonce: expected a non-empty NxN "
                                "matrix, got " + shape_string(s.shape()));
  }
  const std::size_t n = s.dim(0);
  InfoNceParts p;
  p.row_prob.assign(n * n, 0.0);
  p.col_prob.assign(n * n, 0.0);
  double row_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = s[i * n] / tau;
    for (std::size_t j = 1; j < n; ++j) m = std::max(m, s[i * n + j] / tau);
    double z = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = std::exp(s[i * n + j] / tau - m);
      p.row_prob[i * n + j] = e;
      z += e;
    }
    for (std::size_t j = 0; j < n; ++j) p.row_prob[i * n + j] /= z;
    row_total += m + std::log(z) - s[i * n + i] / tau;
  }
  double col_total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double m = s[j] / tau;
    for (std::size_t i = 1; i < n; ++i) m = std::max(m, s[i * n + j] / tau);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(s[i * n + j] / tau - m);
      p.col_prob[i * n + j] = e;
      z += e;
    }
    for (std::size_t i = 0; i < n; ++i) p.col_prob[i * n + j] /= z;
    col_total += m + std::log(z) - s[j * n + j] / tau;
  }
  const double nn = static_cast<double>(n);
  p.loss = 0.5 * (row_total / nn + col_total / nn);
  return p;
}

}  // namespace

Var symmetric_infonce(Graph& g, Var s_var, const LossConfig& config) {
  config.validate();
  const Tensor& s = g.value(s_var);
  InfoNceParts parts = infonce_parts(s, config.temperature);
  const std::size_t n = s.dim(0);
  const double tau = config.temperature;
  return g.apply(
      "symmetric_infonce", {s_var}, Tensor::scalar(parts.loss),
      [n, tau, row = std::move(parts.row_prob),
       col = std::move(parts.col_prob)](const BackwardArgs& args) {
        const double k = args.out_grad[0] * 0.5 / (static_cast<double>(n) * tau);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            const double target = i == j ? 1.0 : 0.0;
            args.input_grads[0][i * n + j] +=
                k * ((row[i * n + j] - target) + (col[i * n + j] - target));
          }
        }
      });
}

Var batch_similarity_matrix(Graph& g, std::span<const Var> tactile,
                            std::span<const Var> visual,
                            const LossConfig& config) {
  check_batch(tactile.size(), visual.size());
  const std::size_t n = tactile.size();
  std::vector<Var> descriptors;
  std::vector<Var> maps;
  descriptors.reserve(n);
  maps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Var d = spatial_mean(g, tactile[i]);
    Var v = visual[i];
    if (config.cosine) {
      d = l2_normalize(g, d);
      v = l2_normalize(g, v);
    }
    descriptors.push_back(d);
    maps.push_back(v);
  }
  std::vector<Var> scores;
  scores.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      scores.push_back(max_pool(g, similarity_map(g, descriptors[i], maps[j])));
    }
  }
  return stack(g, scores, Shape{n, n});
}

TactileDescriptor aggregate_tactile(const FeatureMap& tactile) {
  Graph g;
  const Var d = spatial_mean(g, g.constant(tactile.tensor()));
  return TactileDescriptor{g.value(d).values(), DescriptorSource::kSingleFrame};
}

SimilarityMapGrid similarity_map(const TactileDescriptor& descriptor,
                                 const FeatureMap& visual,
                                 const LossConfig& config) {
  if (descriptor.size() != visual.channels()) {
    throw std::invalid_argument(
        "similarity_map: descriptor has " + std::to_string(descriptor.size()) +
        " channels, feature map has " + std::to_string(visual.channels()));
  }
  Graph g;
  Var d = g.constant(descriptor_tensor(descriptor));
  Var v = g.constant(visual.tensor());
  if (config.cosine) {
    d = l2_normalize(g, d);
    v = l2_normalize(g, v);
  }
  return SimilarityMapGrid{g.value(similarity_map(g, d, v)), "", ""};
}

SimilarityPeak similarity_score(const SimilarityMapGrid& map) {
  return find_peak(map.values);
}

SimilarityPeak similarity_score(const Tensor& map) { return find_peak(map); }

Tensor batch_similarity_matrix(std::span<const FeatureMap> tactile,
                               std::span<const FeatureMap> visual,
                               const LossConfig& config) {
  check_batch(tactile.size(), visual.size());
  for (std::size_t i = 1; i < tactile.size(); ++i) {
    if (tactile[i].channels() != tactile[0].channels() ||
        visual[i].channels() != tactile[0].channels()) {
      throw std::invalid_argument("batch_similarity_matrix: inconsistent C");
    }
  }
  if (visual[0].channels() != tactile[0].channels()) {
    throw std::invalid_argument("batch_similarity_matrix: inconsistent C");
  }
  Graph g;
  std::vector<Var> t, v;
  for (const FeatureMap& m : tactile) t.push_back(g.constant(m.tensor()));
  for (const FeatureMap& m : visual) v.push_back(g.constant(m.tensor()));
  return g.value(batch_similarity_matrix(g, t, v, config));
}

double symmetric_infonce(const Tensor& similarity, const LossConfig& config) {
  config.validate();
  return infonce_parts(similarity, config.temperature).loss;
}

}  // namespace tactloc

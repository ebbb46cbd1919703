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

#ifndef TACTLOC_ALIGNMENT_H_
#define TACTLOC_ALIGNMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tactloc/autodiff.h"
#include "tactloc/tensor.h"

namespace tactloc {

enum class DescriptorSource { kSingleFrame, kPrototype };

// Spatially averaged tactile feature: one C-vector per tactile input.
struct TactileDescriptor {
  std::vector<double> values;
  DescriptorSource source = DescriptorSource::kSingleFrame;

  std::size_t size() const { return values.size(); }
  bool operator==(const TactileDescriptor&) const = default;
};

struct LossConfig {
  double temperature = 0.07;
  // L2-normalize the descriptor and every visual location vector before the
  // inner product. Zero vectors stay zero.
  bool cosine = true;

  // Throws ValidationError unless temperature > 0.
  void validate() const;
};

// H x W map of descriptor / visual-location inner products.
struct SimilarityMapGrid {
  Tensor values;
  std::string descriptor_id;
  std::string feature_map_id;

  std::size_t height() const { return values.dim(0); }
  std::size_t width() const { return values.dim(1); }
};

// Max of a similarity map and where it occurs (first in row-major order).
struct SimilarityPeak {
  double value = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

// Mean over (h, w) of the C-vectors of f_t. Throws on empty spatial extent.
TactileDescriptor aggregate_tactile(const FeatureMap& tactile);

// M[h, w] = <descriptor, f_v[:, h, w]>, normalized per vector in cosine mode.
// Throws std::invalid_argument on channel mismatch.
SimilarityMapGrid similarity_map(const TactileDescriptor& descriptor,
                                 const FeatureMap& visual,
                                 const LossConfig& config);

// Max-pooled pair score.
SimilarityPeak similarity_score(const SimilarityMapGrid& map);
SimilarityPeak similarity_score(const Tensor& map);

// S[i][j] = score(tactile[i], visual[j]); the diagonal holds the positives.
Tensor batch_similarity_matrix(std::span<const FeatureMap> tactile,
                               std::span<const FeatureMap> visual,
                               const LossConfig& config);

// 1/2 [ mean_i CE(row i of S/tau, i) + mean_j CE(column j of S/tau, j) ],
// evaluated with max-shifted log-sum-exp.
double symmetric_infonce(const Tensor& similarity, const LossConfig& config);

// Differentiable building blocks on a Graph.
Var spatial_mean(Graph& g, Var feature_map);
// L2-normalizes along axis 0: a rank-1 vector, or each location of a C x H x W
// map. Zero vectors map to zero with zero gradient.
Var l2_normalize(Graph& g, Var x);
Var similarity_map(Graph& g, Var descriptor, Var visual);
// Max over all entries. The gradient goes entirely to the first maximal
// entry in row-major order.
Var max_pool(Graph& g, Var map);
// Gathers scalar nodes into one tensor of the given shape.
Var stack(Graph& g, const std::vector<Var>& scalars, Shape shape);
Var symmetric_infonce(Graph& g, Var similarity, const LossConfig& config);

// Encoded tactile and visual maps of a batch to the N x N score matrix.
Var batch_similarity_matrix(Graph& g, std::span<const Var> tactile,
                            std::span<const Var> visual,
                            const LossConfig& config);

}  // namespace tactloc

#endif  // TACTLOC_ALIGNMENT_H_

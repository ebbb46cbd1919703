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

#ifndef TACTLOC_SALIENCY_H_
#define TACTLOC_SALIENCY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "tactloc/alignment.h"
#include "tactloc/mask.h"
#include "tactloc/tensor.h"

namespace tactloc {

// Per-pixel tactile-correspondence scores in [0, 1], row-major.
struct SaliencyMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> scores;
  std::string sample_id;
  DescriptorSource source = DescriptorSource::kSingleFrame;

  double at(std::size_t x, std::size_t y) const { return scores[y * width + x]; }
  bool operator==(const SaliencyMap&) const = default;
};

// Align-corners bilinear resampling of an HxW grid to height x width,
// row-major output. A grid axis of length 1 is broadcast.
std::vector<double> upsample_bilinear(const Tensor& grid, std::size_t width,
                                      std::size_t height);

// (v - min) / (max - min); a constant input maps to all zeros.
std::vector<double> normalize_min_max(std::vector<double> values);

// Similarity map of `descriptor` against `visual`, upsampled to
// width x height and min-max normalized.
SaliencyMap compute_saliency(const FeatureMap& visual,
                             const TactileDescriptor& descriptor,
                             const LossConfig& config, std::size_t width,
                             std::size_t height);

// Pixel is inside iff score >= threshold.
MaskImage binarize(const SaliencyMap& saliency, double threshold);

// Scores 1 inside the mask, 0 outside; no normalization.
SaliencyMap saliency_from_mask(const MaskImage& mask);

}  // namespace tactloc

#endif  // TACTLOC_SALIENCY_H_

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

#include "tactloc/saliency.h"

#include <algorithm>
#include <stdexcept>

namespace tactloc {
namespace {

// Source coordinate and the two taps for one output axis.
struct Tap {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double frac = 0.0;
};

std::vector<Tap> axis_taps(std::size_t in, std::size_t out) {
  std::vector<Tap> taps(out);
  for (std::size_t o = 0; o < out; ++o) {
    if (in == 1 || out == 1) continue;
    const double src = static_cast<double>(o) * static_cast<double>(in - 1) /
                       static_cast<double>(out - 1);
    std::size_t lo = static_cast<std::size_t>(src);
    if (lo >= in - 1) lo = in - 2;
    taps[o] = {lo, lo + 1, src - static_cast<double>(lo)};
  }
  return taps;
}

double lerp(double p, double q, double t) { return p + t * (q - p); }

}  // namespace

std::vector<double> upsample_bilinear(const Tensor& grid, std::size_t width,
                                      std::size_t height) {
  if (grid.rank() != 2 || grid.size() == 0) {
    throw std::invalid_argument("upsample_bilinear expects a non-empty 2-d grid");
  }
  if (width == 0 || height == 0) {
    throw std::invalid_argument("upsample_bilinear: zero output extent");
  }
  const std::size_t gh = grid.dim(0);
  const std::size_t gw = grid.dim(1);
  const auto ty = axis_taps(gh, height);
  const auto tx = axis_taps(gw, width);
  auto g = [&](std::size_t r, std::size_t c) { return grid[r * gw + c]; };
  std::vector<double> out(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const Tap& a = ty[y];
    for (std::size_t x = 0; x < width; ++x) {
      const Tap& b = tx[x];
      // p + t * (q - p) is exact when p == q, so flat regions stay flat.
      const double top = lerp(g(a.lo, b.lo), g(a.lo, b.hi), b.frac);
      const double bot = lerp(g(a.hi, b.lo), g(a.hi, b.hi), b.frac);
      out[y * width + x] = lerp(top, bot, a.frac);
    }
  }
  return out;
}

std::vector<double> normalize_min_max(std::vector<double> values) {
  if (values.empty()) return values;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    std::fill(values.begin(), values.end(), 0.0);
    return values;
  }
  const double span = hi - lo;
  for (double& v : values) v = std::clamp((v - lo) / span, 0.0, 1.0);
  return values;
}

SaliencyMap compute_saliency(const FeatureMap& visual,
                             const TactileDescriptor& descriptor,
                             const LossConfig& config, std::size_t width,
                             std::size_t height) {
  const SimilarityMapGrid grid = similarity_map(descriptor, visual, config);
  SaliencyMap out;
  out.width = width;
  out.height = height;
  out.source = descriptor.source;
  out.scores = normalize_min_max(upsample_bilinear(grid.values, width, height));
  return out;
}

MaskImage binarize(const SaliencyMap& saliency, double threshold) {
  std::vector<std::uint8_t> bits(saliency.scores.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = saliency.scores[i] >= threshold ? 1 : 0;
  }
  return MaskImage(saliency.width, saliency.height, std::move(bits));
}

SaliencyMap saliency_from_mask(const MaskImage& mask) {
  SaliencyMap out;
  out.width = mask.width();
  out.height = mask.height();
  out.scores.resize(mask.pixel_count());
  for (std::size_t i = 0; i < out.scores.size(); ++i) {
    out.scores[i] = mask[i] ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace tactloc

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

#include "tactloc/heatmap.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tactloc {
namespace {

std::uint8_t to_byte(double v) {
  const double r = std::round(v);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace

Raster heatmap_gray(const SaliencyMap& saliency) {
  std::vector<std::uint8_t> samples(saliency.scores.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = to_byte(255.0 * saliency.scores[i]);
  }
  return Raster(saliency.width, saliency.height, 1, std::move(samples));
}

Raster heatmap_overlay(const SaliencyMap& saliency, const Raster& base) {
  if (base.width() != saliency.width || base.height() != saliency.height) {
    throw std::invalid_argument("heatmap_overlay: image and saliency sizes differ");
  }
  std::vector<std::uint8_t> samples(saliency.width * saliency.height * 3);
  for (std::size_t y = 0; y < saliency.height; ++y) {
    for (std::size_t x = 0; x < saliency.width; ++x) {
      const double s = saliency.at(x, y);
      for (std::size_t c = 0; c < 3; ++c) {
        const double px = base.at(x, y, base.channels() == 3 ? c : 0);
        const double tint = c == 0 ? 255.0 * s : 0.0;
        samples[(y * saliency.width + x) * 3 + c] = to_byte(0.5 * px + 0.5 * tint);
      }
    }
  }
  return Raster(saliency.width, saliency.height, 3, std::move(samples));
}

void export_heatmap(const SaliencyMap& saliency, const Raster& base,
                    const std::filesystem::path& pgm_path,
                    const std::filesystem::path& ppm_path) {
  const Raster overlay = heatmap_overlay(saliency, base);
  write_netpbm(heatmap_gray(saliency), pgm_path);
  write_netpbm(overlay, ppm_path);
}

}  // namespace tactloc

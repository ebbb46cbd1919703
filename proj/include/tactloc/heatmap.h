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

#ifndef TACTLOC_HEATMAP_H_
#define TACTLOC_HEATMAP_H_

#include <filesystem>

#include "tactloc/raster.h"
#include "tactloc/saliency.h"

namespace tactloc {

// Grayscale raster of round(255 * score).
Raster heatmap_gray(const SaliencyMap& saliency);

// RGB raster of round(0.5 * pixel + 0.5 * score * (255, 0, 0)). A grayscale
// base contributes the same value to every channel.
Raster heatmap_overlay(const SaliencyMap& saliency, const Raster& base);

// Writes the grayscale map as PGM and the overlay as PPM.
void export_heatmap(const SaliencyMap& saliency, const Raster& base,
                    const std::filesystem::path& pgm_path,
                    const std::filesystem::path& ppm_path);

}  // namespace tactloc

#endif  // TACTLOC_HEATMAP_H_

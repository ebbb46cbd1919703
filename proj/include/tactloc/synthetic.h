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

#ifndef TACTLOC_SYNTHETIC_H_
#define TACTLOC_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tactloc {

// A corpus whose categories are separable by construction. Every feature map
// is G x G with D channels:
//   tactile frame   b_k + s * g_n + noise            (k category, n instance)
//   visual frame    a_k + s * g_n + noise inside a rectangle, z_n + noise outside
//   scene region    a_k + s * g_r + noise            (g_r fresh per region)
// where a_k, b_k, z_n, g_* are unit vectors and s is `nuisance`. The first and
// last tactile frames of an instance are blended toward a per-frame random
// direction by `endpoint_noise`.
struct SyntheticSpec {
  std::size_t categories = 4;
  std::size_t instances_per_category = 12;
  std::size_t frames_per_instance = 6;
  std::size_t instances_per_video = 2;
  double test_fraction = 0.3;
  std::size_t out_domain_per_category = 8;
  std::size_t scenes = 24;
  std::size_t interactive_scenes = 20;
  std::size_t grid = 14;
  std::size_t feature_dim = 32;
  std::size_t image_side = 224;
  double endpoint_noise = 0.0;
  double nuisance = 0.6;
  double location_noise = 0.15;

  // Throws ValidationError for K < 2 and other unusable settings.
  void validate() const;
};

struct SyntheticSignatures {
  std::vector<std::string> names;
  std::vector<std::vector<double>> visual;
  std::vector<std::vector<double>> tactile;
};

// Material names for the first eight categories, then "material<k>".
std::vector<std::string> synthetic_category_names(std::size_t count);

// Throws std::runtime_error when two signatures of one modality have
// |cos| > 0.99.
SyntheticSignatures make_signatures(const SyntheticSpec& spec, std::uint64_t seed);

struct SyntheticCorpus {
  std::filesystem::path manifest;
  std::filesystem::path eval_list;
  std::filesystem::path interactive_list;
  std::size_t tactile_frames = 0;
  std::size_t train_instances = 0;
  std::size_t test_instances = 0;
  std::size_t out_domain_images = 0;
  std::size_t scenes = 0;
  std::size_t eval_samples = 0;
  std::size_t interactive_samples = 0;
};

// Writes under `dir`:
//   manifest.tsv        touch frames (split train/test by video) and
//                       out-domain images, in shuffled order
//   eval.tsv            one query per (scene, region)
//   interactive.tsv     two-region scenes with both queries
//   visual/ tactile/ outdomain/ scenes/   VTFT feature maps
//   masks/ renders/                       PGM masks and PPM renders
// Output bytes depend only on (spec, seed).
SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec,
                                          std::uint64_t seed,
                                          const std::filesystem::path& dir);

}  // namespace tactloc

#endif  // TACTLOC_SYNTHETIC_H_

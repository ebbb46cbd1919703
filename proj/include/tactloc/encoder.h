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

#ifndef TACTLOC_ENCODER_H_
#define TACTLOC_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tactloc/autodiff.h"
#include "tactloc/param_set.h"
#include "tactloc/raster.h"
#include "tactloc/tensor.h"

namespace tactloc {

enum class BackboneKind {
  // Frozen seeded linear projection of raw pixel patches.
  kRandomProjection,
  // Externally computed per-patch features read from VTFT files, passed
  // through a linear adapter.
  kFeatureFile,
};

std::string_view to_string(BackboneKind kind);
BackboneKind parse_backbone_kind(std::string_view text);

struct EncoderConfig {
  std::size_t image_side = 224;
  std::size_t patch_size = 16;
  std::size_t backbone_dim = 32;
  std::size_t shared_dim = 16;
  BackboneKind backbone_kind = BackboneKind::kRandomProjection;
  // Raster channels (random-projection) and VTFT channels (feature-file).
  std::size_t image_channels = 3;
  std::size_t feature_channels = 32;
  double layernorm_eps = 1e-5;

  std::size_t grid() const { return image_side / patch_size; }
  // Width of the backbone's input vectors.
  std::size_t input_dim() const;
  // Throws ValidationError when the invariants do not hold.
  void validate() const;
};

// Backbone (input_dim x D, D), aligner LayerNorm (D, D) and aligner
// projection (D x C, C).
struct EncoderParams {
  Tensor backbone_weight;
  Tensor backbone_bias;
  Tensor norm_gamma;
  Tensor norm_beta;
  Tensor proj_weight;
  Tensor proj_bias;
};

EncoderParams init_encoder_params(const EncoderConfig& config,
                                  std::uint64_t seed);

// Splits an image into a (P*P*channels) x (H/P) x (W/P) tensor; patch (i, j)
// holds pixels [iP, iP+P) x [jP, jP+P) scaled to [0, 1] in (row, col,
// channel) order. Throws std::invalid_argument if P does not divide both
// sides.
Tensor patchify(const Raster& image, std::size_t patch_size);
// Exact inverse of patchify for tensors it produced.
Raster unpatchify(const Tensor& patches, std::size_t patch_size,
                  std::size_t channels);

// Patch encoder: backbone, then channel LayerNorm, then a 1x1 projection to
// the shared space. Parameters live in a ParamSet under "<prefix>.".
class Encoder {
 public:
  Encoder(std::string prefix, EncoderConfig config);

  const std::string& prefix() const { return prefix_; }
  const EncoderConfig& config() const { return config_; }

  std::string name(std::string_view part) const;
  std::vector<std::string> backbone_names() const;
  std::vector<std::string> aligner_names() const;

  void add_params(ParamSet& set, const EncoderParams& params,
                  bool backbone_trainable, bool aligner_trainable) const;
  EncoderParams params_from(const ParamSet& set) const;

  // Backbone input for either input kind. Throws std::invalid_argument when
  // the input does not match the configured kind or dimensions.
  Tensor prepare(const Raster& image) const;
  Tensor prepare(const FeatureMap& features) const;

  Var forward(Graph& g, const ParamSet& set, Var input) const;

  FeatureMap encode(const Raster& image, const ParamSet& set) const;
  FeatureMap encode(const FeatureMap& features, const ParamSet& set) const;

 private:
  FeatureMap run(Tensor input, const ParamSet& set) const;

  std::string prefix_;
  EncoderConfig config_;
};

// Free-standing forms for callers holding bare EncoderParams.
FeatureMap encode(const Raster& image, const EncoderParams& params,
                  const EncoderConfig& config);
FeatureMap encode(const FeatureMap& features, const EncoderParams& params,
                  const EncoderConfig& config);

}  // namespace tactloc

#endif  // TACTLOC_ENCODER_H_

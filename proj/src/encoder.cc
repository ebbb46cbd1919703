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

#include "tactloc/encoder.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tactloc/errors.h"
#include "tactloc/rng.h"

namespace tactloc {
namespace {

// Gaussian entries with each output column scaled to unit L2 norm.
Tensor column_normalized_gaussian(std::size_t rows, std::size_t cols,
                                  Rng& rng) {
  std::vector<double> w(rows * cols);
  for (double& v : w) v = rng.normal();
  for (std::size_t c = 0; c < cols; ++c) {
    double norm = 0.0;
    for (std::size_t r = 0; r < rows; ++r) norm += w[r * cols + c] * w[r * cols + c];
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;
    for (std::size_t r = 0; r < rows; ++r) w[r * cols + c] /= norm;
  }
  return Tensor(Shape{rows, cols}, std::move(w));
}

Tensor identity(std::size_t n) {
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
  return Tensor(Shape{n, n}, std::move(w));
}

}  // namespace

std::string_view to_string(BackboneKind kind) {
  return kind == BackboneKind::kFeatureFile ? "feature-file"
                                            : "random-projection";
}

BackboneKind parse_backbone_kind(std::string_view text) {
  if (text == "feature-file") return BackboneKind::kFeatureFile;
  if (text == "random-projection") return BackboneKind::kRandomProjection;
  throw ValidationError("unknown backbone kind '" + std::string(text) + "'");
}

std::size_t EncoderConfig::input_dim() const {
  return backbone_kind == BackboneKind::kFeatureFile
             ? feature_channels
             : patch_size * patch_size * image_channels;
}

void EncoderConfig::validate() const {
  if (patch_size == 0 || image_side == 0 || image_side % patch_size != 0) {
    throw ValidationError("image side " + std::to_string(image_side) +
                          " is not divisible by patch size " +
                          std::to_string(patch_size));
  }
  if (backbone_dim == 0 || shared_dim == 0) {
    throw ValidationError("backbone and shared dimensions must be positive");
  }
  if (image_channels != 1 && image_channels != 3) {
    throw ValidationError("image channels must be 1 or 3");
  }
  if (feature_channels == 0) {
    throw ValidationError("feature channels must be positive");
  }
  if (!(layernorm_eps > 0.0)) {
    throw ValidationError("layernorm eps must be positive");
  }
}

EncoderParams init_encoder_params(const EncoderConfig& config,
                                  std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  const std::size_t in = config.input_dim();
  const std::size_t d = config.backbone_dim;
  const std::size_t c = config.shared_dim;
  EncoderParams p;
  if (config.backbone_kind == BackboneKind::kFeatureFile && in == d) {
    p.backbone_weight = identity(d);
  } else {
    p.backbone_weight = column_normalized_gaussian(in, d, rng);
  }
  p.backbone_bias = Tensor::zeros(Shape{d});
  p.norm_gamma = Tensor::filled(Shape{d}, 1.0);
  p.norm_beta = Tensor::zeros(Shape{d});
  std::vector<double> proj(d * c);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (double& v : proj) v = s * rng.normal();
  p.proj_weight = Tensor(Shape{d, c}, std::move(proj));
  p.proj_bias = Tensor::zeros(Shape{c});
  return p;
}

Tensor patchify(const Raster& image, std::size_t patch_size) {
  if (patch_size == 0 || image.width() % patch_size != 0 ||
      image.height() % patch_size != 0) {
    throw std::invalid_argument(
        "patchify: image " + std::to_string(image.width()) + "x" +
        std::to_string(image.height()) + " is not divisible by patch size " +
        std::to_string(patch_size));
  }
  const std::size_t p = patch_size;
  const std::size_t ch = image.channels();
  const std::size_t gh = image.height() / p;
  const std::size_t gw = image.width() / p;
  const std::size_t dim = p * p * ch;
  std::vector<double> out(dim * gh * gw);
  for (std::size_t i = 0; i < gh; ++i) {
    for (std::size_t j = 0; j < gw; ++j) {
      for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
          for (std::size_t k = 0; k < ch; ++k) {
            const std::size_t feature = (r * p + c) * ch + k;
            out[(feature * gh + i) * gw + j] =
                image.at(j * p + c, i * p + r, k) / 255.0;
          }
        }
      }
    }
  }
  return Tensor(Shape{dim, gh, gw}, std::move(out));
}

Raster unpatchify(const Tensor& patches, std::size_t patch_size,
                  std::size_t channels) {
  const std::size_t p = patch_size;
  if (patches.rank() != 3 || patches.dim(0) != p * p * channels) {
    throw std::invalid_argument("unpatchify: shape does not match patch size");
  }
  const std::size_t gh = patches.dim(1);
  const std::size_t gw = patches.dim(2);
  Raster out = Raster::filled(gw * p, gh * p, channels, 0);
  for (std::size_t f = 0; f < p * p * channels; ++f) {
    const std::size_t k = f % channels;
    const std::size_t c = (f / channels) % p;
    const std::size_t r = f / (channels * p);
    for (std::size_t i = 0; i < gh; ++i) {
      for (std::size_t j = 0; j < gw; ++j) {
        const double v = std::round(patches.at(f, i, j) * 255.0);
        out.set(j * p + c, i * p + r, k, static_cast<std::uint8_t>(v));
      }
    }
  }
  return out;
}

Encoder::Encoder(std::string prefix, EncoderConfig config)
    : prefix_(std::move(prefix)), config_(config) {
  config_.validate();
}

std::string Encoder::name(std::string_view part) const {
  return prefix_ + "." + std::string(part);
}

std::vector<std::string> Encoder::backbone_names() const {
  return {name("backbone.weight"), name("backbone.bias")};
}

std::vector<std::string> Encoder::aligner_names() const {
  return {name("aligner.norm.gamma"), name("aligner.norm.beta"),
          name("aligner.proj.weight"), name("aligner.proj.bias")};
}

void Encoder::add_params(ParamSet& set, const EncoderParams& p,
                         bool backbone_trainable,
                         bool aligner_trainable) const {
  const std::size_t in = config_.input_dim();
  const std::size_t d = config_.backbone_dim;
  const std::size_t c = config_.shared_dim;
  if (p.backbone_weight.shape() != Shape{in, d} ||
      p.backbone_bias.shape() != Shape{d} || p.norm_gamma.shape() != Shape{d} ||
      p.norm_beta.shape() != Shape{d} || p.proj_weight.shape() != Shape{d, c} ||
      p.proj_bias.shape() != Shape{c}) {
    throw std::invalid_argument("encoder parameters do not match config for '" +
                                prefix_ + "'");
  }
  set.add(name("backbone.weight"), p.backbone_weight, backbone_trainable);
  set.add(name("backbone.bias"), p.backbone_bias, backbone_trainable);
  set.add(name("aligner.norm.gamma"), p.norm_gamma, aligner_trainable);
  set.add(name("aligner.norm.beta"), p.norm_beta, aligner_trainable);
  set.add(name("aligner.proj.weight"), p.proj_weight, aligner_trainable);
  set.add(name("aligner.proj.bias"), p.proj_bias, aligner_trainable);
}

EncoderParams Encoder::params_from(const ParamSet& set) const {
  return EncoderParams{set.get(name("backbone.weight")),
                       set.get(name("backbone.bias")),
                       set.get(name("aligner.norm.gamma")),
                       set.get(name("aligner.norm.beta")),
                       set.get(name("aligner.proj.weight")),
                       set.get(name("aligner.proj.bias"))};
}

Tensor Encoder::prepare(const Raster& image) const {
  if (config_.backbone_kind != BackboneKind::kRandomProjection) {
    throw std::invalid_argument("encoder '" + prefix_ +
                                "' expects feature-file input, got a raster");
  }
  if (image.width() != config_.image_side ||
      image.height() != config_.image_side ||
      image.channels() != config_.image_channels) {
    throw std::invalid_argument(
        "encoder '" + prefix_ + "' expects " +
        std::to_string(config_.image_side) + "x" +
        std::to_string(config_.image_side) + "x" +
        std::to_string(config_.image_channels) + " rasters");
  }
  return patchify(image, config_.patch_size);
}

Tensor Encoder::prepare(const FeatureMap& features) const {
  if (config_.backbone_kind != BackboneKind::kFeatureFile) {
    throw std::invalid_argument("encoder '" + prefix_ +
                                "' expects raster input, got a feature map");
  }
  if (features.channels() != config_.feature_channels ||
      features.height() != config_.grid() ||
      features.width() != config_.grid()) {
    throw std::invalid_argument(
        "encoder '" + prefix_ + "' expects " +
        std::to_string(config_.feature_channels) + "x" +
        std::to_string(config_.grid()) + "x" + std::to_string(config_.grid()) +
        " features, got " + shape_string(features.tensor().shape()));
  }
  return features.tensor();
}

Var Encoder::forward(Graph& g, const ParamSet& set, Var input) const {
  Var x = pointwise_linear(g, input, g.parameter(set, name("backbone.weight")),
                           g.parameter(set, name("backbone.bias")));
  x = channel_layernorm(g, x, g.parameter(set, name("aligner.norm.gamma")),
                        g.parameter(set, name("aligner.norm.beta")),
                        config_.layernorm_eps);
  return pointwise_linear(g, x, g.parameter(set, name("aligner.proj.weight")),
                          g.parameter(set, name("aligner.proj.bias")));
}

FeatureMap Encoder::run(Tensor input, const ParamSet& set) const {
  Graph g;
  const Var out = forward(g, set, g.constant(std::move(input)));
  return FeatureMap(g.value(out));
}

FeatureMap Encoder::encode(const Raster& image, const ParamSet& set) const {
  return run(prepare(image), set);
}

FeatureMap Encoder::encode(const FeatureMap& features,
                           const ParamSet& set) const {
  return run(prepare(features), set);
}

namespace {

ParamSet single_encoder_set(const Encoder& enc, const EncoderParams& params) {
  ParamSet set;
  enc.add_params(set, params, false, false);
  return set;
}

}  // namespace

FeatureMap encode(const Raster& image, const EncoderParams& params,
                  const EncoderConfig& config) {
  Encoder enc("encoder", config);
  return enc.encode(image, single_encoder_set(enc, params));
}

FeatureMap encode(const FeatureMap& features, const EncoderParams& params,
                  const EncoderConfig& config) {
  Encoder enc("encoder", config);
  return enc.encode(features, single_encoder_set(enc, params));
}

}  // namespace tactloc

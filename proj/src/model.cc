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

#include "tactloc/model.h"

#include <utility>
#include <vector>

#include "tactloc/feature_file.h"
#include "tactloc/rng.h"

namespace tactloc {
namespace {

enum : std::uint64_t { kVisualInit = 0x7151, kTactileInit = 0x7152 };

}  // namespace

Model::Model(const EncoderConfig& config, std::uint64_t seed)
    : visual_(kVisualPrefix, config), tactile_(kTactilePrefix, config) {
  config.validate();
  visual_.add_params(params_, init_encoder_params(config, derive_seed(seed, {kVisualInit})),
                     false, true);
  tactile_.add_params(params_,
                      init_encoder_params(config, derive_seed(seed, {kTactileInit})),
                      false, true);
}

Model::Model(const EncoderConfig& config, ParamSet params)
    : visual_(kVisualPrefix, config),
      tactile_(kTactilePrefix, config),
      params_(std::move(params)) {
  config.validate();
  // Validates that every tensor is present with the expected shape.
  (void)visual_.params_from(params_);
  (void)tactile_.params_from(params_);
}

void Model::set_tactile_backbone_trainable(bool trainable) {
  for (const std::string& n : visual_.backbone_names()) params_.set_trainable(n, false);
  for (const std::string& n : visual_.aligner_names()) params_.set_trainable(n, true);
  for (const std::string& n : tactile_.backbone_names()) {
    params_.set_trainable(n, trainable);
  }
  for (const std::string& n : tactile_.aligner_names()) params_.set_trainable(n, true);
}

FeatureMap flip_horizontal(const FeatureMap& map) {
  const std::size_t c = map.channels(), h = map.height(), w = map.width();
  std::vector<double> data(c * h * w);
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        data[(k * h + y) * w + x] = map.at(k, y, w - 1 - x);
      }
    }
  }
  return FeatureMap(c, h, w, std::move(data));
}

Raster flip_horizontal(const Raster& image) {
  Raster out = image;
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      for (std::size_t c = 0; c < image.channels(); ++c) {
        out.set(x, y, c, image.at(image.width() - 1 - x, y, c));
      }
    }
  }
  return out;
}

ModelInput load_model_input(const std::filesystem::path& path) {
  if (path.extension() == ".vtft") return load_feature_map(path);
  return read_netpbm(path);
}

const ModelInput& InputStore::get(const std::filesystem::path& path) {
  const std::string key = path.string();
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, load_model_input(path)).first;
  return it->second;
}

Tensor InputStore::prepared(const Encoder& encoder, const std::filesystem::path& path,
                            bool flip) {
  const std::string key = encoder.prefix() + (flip ? "|flip|" : "|") + path.string();
  if (auto it = prepared_.find(key); it != prepared_.end()) return it->second;
  const ModelInput& input = get(path);
  Tensor t = std::visit(
      [&](const auto& in) { return encoder.prepare(flip ? flip_horizontal(in) : in); },
      input);
  prepared_.emplace(key, t);
  return t;
}

FeatureMap visual_features(const Model& model, const ModelInput& input) {
  return std::visit([&](const auto& in) { return model.visual_features(in); }, input);
}

TactileDescriptor tactile_descriptor(const Model& model, const ModelInput& input) {
  return std::visit([&](const auto& in) { return model.tactile_descriptor(in); }, input);
}

}  // namespace tactloc

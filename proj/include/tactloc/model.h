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

#ifndef TACTLOC_MODEL_H_
#define TACTLOC_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>

#include "tactloc/alignment.h"
#include "tactloc/encoder.h"
#include "tactloc/param_set.h"
#include "tactloc/raster.h"

namespace tactloc {

inline constexpr const char* kVisualPrefix = "visual";
inline constexpr const char* kTactilePrefix = "tactile";

// The two encoders and their parameters in one set. The visual backbone is
// always frozen; the tactile backbone starts frozen.
class Model {
 public:
  Model(const EncoderConfig& config, std::uint64_t seed);
  Model(const EncoderConfig& config, ParamSet params);

  const EncoderConfig& config() const { return visual_.config(); }
  const Encoder& visual() const { return visual_; }
  const Encoder& tactile() const { return tactile_; }
  const ParamSet& params() const { return params_; }
  ParamSet& params() { return params_; }

  // Freeze schedule: aligners trainable, visual backbone frozen, tactile
  // backbone as given.
  void set_tactile_backbone_trainable(bool trainable);

  template <typename Input>
  FeatureMap visual_features(const Input& input) const {
    return visual_.encode(input, params_);
  }
  template <typename Input>
  TactileDescriptor tactile_descriptor(const Input& input) const {
    return aggregate_tactile(tactile_.encode(input, params_));
  }

 private:
  Encoder visual_;
  Encoder tactile_;
  ParamSet params_;
};

using ModelInput = std::variant<FeatureMap, Raster>;

// Mirror along the width axis.
FeatureMap flip_horizontal(const FeatureMap& map);
Raster flip_horizontal(const Raster& image);

// Reads VTFT files (".vtft") or netpbm rasters, caching by path.
class InputStore {
 public:
  const ModelInput& get(const std::filesystem::path& path);
  // Backbone input tensor for `encoder`, optionally mirrored.
  Tensor prepared(const Encoder& encoder, const std::filesystem::path& path,
                  bool flip = false);
  std::size_t cached() const { return cache_.size(); }

 private:
  std::map<std::string, ModelInput> cache_;
  std::map<std::string, Tensor> prepared_;
};

// Feature map or raster depending on the file extension.
ModelInput load_model_input(const std::filesystem::path& path);

FeatureMap visual_features(const Model& model, const ModelInput& input);
TactileDescriptor tactile_descriptor(const Model& model, const ModelInput& input);

}  // namespace tactloc

#endif  // TACTLOC_MODEL_H_

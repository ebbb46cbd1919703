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

#ifndef TACTLOC_PIPELINE_H_
#define TACTLOC_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "tactloc/dataset.h"
#include "tactloc/evaluate.h"
#include "tactloc/gradcheck.h"
#include "tactloc/model.h"
#include "tactloc/prototypes.h"
#include "tactloc/run_config.h"
#include "tactloc/synthetic.h"
#include "tactloc/trainer.h"

namespace tactloc {

// Trained model plus corpus lookups: tactile queries for instances or
// category prototypes, and saliency maps for images.
class Localizer {
 public:
  Localizer(Model model, LossConfig loss, const CorpusIndex& corpus);

  const Model& model() const { return model_; }

  TactileDescriptor frame_descriptor(const TouchInstance& instance, std::size_t offset);
  // Prototype of `category` when config.use_prototype, otherwise the
  // instance's descriptor at config.frame_position.
  TactileDescriptor query(const std::string& instance_id, const std::string& category,
                          const EvalConfig& config);
  // Over the corpus's training instances.
  const PrototypeTable& prototypes();

  SaliencyMap saliency(const std::filesystem::path& image,
                       const TactileDescriptor& descriptor, std::size_t width,
                       std::size_t height);

 private:
  Model model_;
  LossConfig loss_;
  const CorpusIndex& corpus_;
  InputStore inputs_;
  std::map<std::string, TactileDescriptor> frame_cache_;
  std::map<std::string, FeatureMap> visual_cache_;
  std::optional<PrototypeTable> prototypes_;
};

SyntheticSpec synthetic_spec_from(const RunConfig& config);

// `synth`: writes the corpus to config.corpus_dir().
SyntheticCorpus run_synth(const RunConfig& config);

TrainResult run_train(const RunConfig& config, const TrainObserver& observer = {});

// Model from `checkpoint`, or the latest checkpoint under `out`.
Model load_model(const RunConfig& config);

// Each of these writes report-<name>.txt under `out` (name from `report`, or
// a per-command default) and returns the report.
EvalReport run_eval(const RunConfig& config);
EvalReport run_interactive(const RunConfig& config);
std::map<FramePosition, EvalReport> run_robustness(const RunConfig& config);

struct LocalizeResult {
  SaliencyMap saliency;
  std::filesystem::path gray_path;
  std::filesystem::path overlay_path;
};

// Heatmap for `image` queried by a `tactile` file or the prototype of
// `category`.
LocalizeResult run_localize(const RunConfig& config);

// Full pipeline (encoders -> aggregation -> similarity -> max -> symmetric
// InfoNCE) on a small random batch, every parameter trainable.
struct GradCheckProblem {
  ParamSet params;
  LossBuilder loss;
};
GradCheckProblem make_gradcheck_problem(std::uint64_t seed, std::size_t pairs = 3,
                                        const LossConfig& loss = {});

GradCheckReport run_gradcheck(const RunConfig& config);

}  // namespace tactloc

#endif  // TACTLOC_PIPELINE_H_

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

#ifndef TACTLOC_EVALUATE_H_
#define TACTLOC_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tactloc/mask.h"
#include "tactloc/metrics.h"
#include "tactloc/pairing.h"
#include "tactloc/prototypes.h"
#include "tactloc/saliency.h"

namespace tactloc {

struct EvalConfig {
  double threshold = 0.5;
  ApFlavor ap_flavor = ApFlavor::kRanking;
  FramePosition frame_position = FramePosition::kMiddle;
  // Use the category prototype instead of a frame of the sample's instance.
  bool use_prototype = false;
  std::string upsampling = "bilinear-align-corners";

  void validate() const;
};

struct LocalizationSample {
  std::string sample_id;
  std::string category;
  // Touch instance whose frames supply the query descriptor (may be empty when
  // prototypes are used).
  std::string instance_id;
  MaskImage gt;
};

struct SampleMetrics {
  std::string sample_id;
  std::string category;
  double ap = 0.0;
  double iou = 0.0;
};

struct CategoryMetrics {
  std::size_t samples = 0;
  double map = 0.0;   // percent
  double miou = 0.0;  // percent
};

struct EvalReport {
  std::string label;
  std::uint64_t seed = 0;
  EvalConfig config;
  std::size_t sample_count = 0;
  double map = 0.0;   // percent
  double miou = 0.0;  // percent
  std::optional<double> iiou;  // percent, interactive runs only
  std::map<std::string, CategoryMetrics> categories;
  std::vector<SampleMetrics> samples;
};

using SaliencyFn = std::function<SaliencyMap(const LocalizationSample&)>;

// mAP and mIoU (percent) over samples, summed in input order, plus a
// per-category breakdown. Throws std::invalid_argument for an empty dataset
// or a sample with an empty ground truth.
EvalReport evaluate_localization(std::span<const LocalizationSample> dataset,
                                 const SaliencyFn& saliency,
                                 const EvalConfig& config);

struct InteractiveSample {
  std::string sample_id;
  std::string category_a;
  std::string instance_a;
  MaskImage gt_a;
  std::string category_b;
  std::string instance_b;
  MaskImage gt_b;
};

// `which` is 0 for the first query and 1 for the second.
using InteractiveSaliencyFn =
    std::function<SaliencyMap(const InteractiveSample&, int which)>;

struct InteractiveResult {
  std::size_t samples = 0;
  std::size_t successes = 0;
  double iiou = 0.0;  // percent
  // Per sample: (IoU of query a, IoU of query b).
  std::vector<std::pair<double, double>> ious;
};

// A sample succeeds iff both binarized predictions reach IoU > 0.5 against
// their masks.
InteractiveResult evaluate_interactive(std::span<const InteractiveSample> dataset,
                                       const InteractiveSaliencyFn& saliency,
                                       const EvalConfig& config);

// Query descriptor for an instance at `pos`: the Start/End frame, or for
// Middle the mean over middle_offsets() (all non-endpoint frames).
TactileDescriptor descriptor_at(const TouchInstance& instance, FramePosition pos,
                                const FrameDescriber& describe);

using PositionalSaliencyFn =
    std::function<SaliencyMap(const LocalizationSample&, FramePosition)>;

// Reports keyed by Start, Middle and End.
std::map<FramePosition, EvalReport> robustness_report(
    std::span<const LocalizationSample> dataset,
    const PositionalSaliencyFn& saliency, const EvalConfig& config);

}  // namespace tactloc

#endif  // TACTLOC_EVALUATE_H_

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

#include "tactloc/evaluate.h"

#include <stdexcept>

#include "tactloc/errors.h"

namespace tactloc {
namespace {

void check_dims(const SaliencyMap& s, const MaskImage& gt, const std::string& id) {
  if (s.width != gt.width() || s.height != gt.height() ||
      s.scores.size() != gt.pixel_count()) {
    throw std::invalid_argument("sample '" + id +
                                "': saliency and mask sizes differ");
  }
}

}  // namespace

void EvalConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("threshold must lie in [0, 1]");
  }
}

EvalReport evaluate_localization(std::span<const LocalizationSample> dataset,
                                 const SaliencyFn& saliency,
                                 const EvalConfig& config) {
  config.validate();
  if (dataset.empty()) throw std::invalid_argument("empty evaluation dataset");
  EvalReport report;
  report.config = config;
  report.sample_count = dataset.size();
  double ap_sum = 0.0;
  double iou_sum = 0.0;
  std::map<std::string, std::pair<double, double>> sums;
  for (const LocalizationSample& sample : dataset) {
    if (sample.gt.count() == 0) {
      throw std::invalid_argument("sample '" + sample.sample_id +
                                  "' has an empty ground-truth mask");
    }
    const SaliencyMap s = saliency(sample);
    check_dims(s, sample.gt, sample.sample_id);
    SampleMetrics m{sample.sample_id, sample.category,
                    pixel_average_precision(s, sample.gt, config.ap_flavor),
                    region_iou(binarize(s, config.threshold), sample.gt)};
    ap_sum += m.ap;
    iou_sum += m.iou;
    auto& [cat_ap, cat_iou] = sums[sample.category];
    cat_ap += m.ap;
    cat_iou += m.iou;
    report.categories[sample.category].samples += 1;
    report.samples.push_back(std::move(m));
  }
  const double n = static_cast<double>(dataset.size());
  report.map = 100.0 * ap_sum / n;
  report.miou = 100.0 * iou_sum / n;
  for (auto& [cat, metrics] : report.categories) {
    const double k = static_cast<double>(metrics.samples);
    metrics.map = 100.0 * sums[cat].first / k;
    metrics.miou = 100.0 * sums[cat].second / k;
  }
  return report;
}

InteractiveResult evaluate_interactive(std::span<const InteractiveSample> dataset,
                                       const InteractiveSaliencyFn& saliency,
                                       const EvalConfig& config) {
  config.validate();
  if (dataset.empty()) throw std::invalid_argument("empty interactive dataset");
  InteractiveResult result;
  result.samples = dataset.size();
  for (const InteractiveSample& sample : dataset) {
    if (sample.gt_a.width() != sample.gt_b.width() ||
        sample.gt_a.height() != sample.gt_b.height()) {
      throw std::invalid_argument("interactive sample '" + sample.sample_id +
                                  "': mask sizes differ");
    }
    const SaliencyMap sa = saliency(sample, 0);
    const SaliencyMap sb = saliency(sample, 1);
    check_dims(sa, sample.gt_a, sample.sample_id);
    check_dims(sb, sample.gt_b, sample.sample_id);
    const double ia = region_iou(binarize(sa, config.threshold), sample.gt_a);
    const double ib = region_iou(binarize(sb, config.threshold), sample.gt_b);
    result.ious.emplace_back(ia, ib);
    if (ia > 0.5 && ib > 0.5) ++result.successes;
  }
  result.iiou = 100.0 * static_cast<double>(result.successes) /
                static_cast<double>(result.samples);
  return result;
}

TactileDescriptor descriptor_at(const TouchInstance& instance, FramePosition pos,
                                const FrameDescriber& describe) {
  if (pos != FramePosition::kMiddle) {
    return describe(instance, select_frame(instance, pos).offset);
  }
  const std::vector<std::size_t> offsets = middle_offsets(instance);
  TactileDescriptor out = describe(instance, offsets.front());
  for (std::size_t k = 1; k < offsets.size(); ++k) {
    const TactileDescriptor d = describe(instance, offsets[k]);
    if (d.size() != out.size()) {
      throw std::invalid_argument("descriptor dimension changed within '" +
                                  instance.instance_id + "'");
    }
    for (std::size_t c = 0; c < d.size(); ++c) out.values[c] += d.values[c];
  }
  const double n = static_cast<double>(offsets.size());
  for (double& v : out.values) v /= n;
  return out;
}

std::map<FramePosition, EvalReport> robustness_report(
    std::span<const LocalizationSample> dataset,
    const PositionalSaliencyFn& saliency, const EvalConfig& config) {
  std::map<FramePosition, EvalReport> out;
  for (FramePosition pos : {FramePosition::kStart, FramePosition::kMiddle,
                            FramePosition::kEnd}) {
    EvalConfig c = config;
    c.frame_position = pos;
    c.use_prototype = false;
    out.emplace(pos, evaluate_localization(
                         dataset,
                         [&](const LocalizationSample& s) { return saliency(s, pos); },
                         c));
  }
  return out;
}

}  // namespace tactloc

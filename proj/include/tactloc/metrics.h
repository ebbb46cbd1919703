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

#ifndef TACTLOC_METRICS_H_
#define TACTLOC_METRICS_H_

#include <cstddef>
#include <span>
#include <string_view>

#include "tactloc/mask.h"
#include "tactloc/saliency.h"

namespace tactloc {

// |pred & gt| / |pred | gt|, and 1 when both are empty. Throws
// std::invalid_argument on a size mismatch.
double region_iou(const MaskImage& pred, const MaskImage& gt);

enum class ApFlavor {
  // Mean over positives of precision at that positive's rank.
  kRanking,
  // Same, with precision replaced by the best precision at any later rank.
  kInterpolated,
};

std::string_view to_string(ApFlavor flavor);
ApFlavor parse_ap_flavor(std::string_view text);

// Pixels ranked by descending score, ties by row-major index. Throws
// std::invalid_argument for an empty ground truth or a size mismatch.
double pixel_average_precision(std::span<const double> scores,
                               const MaskImage& gt,
                               ApFlavor flavor = ApFlavor::kRanking);
double pixel_average_precision(const SaliencyMap& saliency, const MaskImage& gt,
                               ApFlavor flavor = ApFlavor::kRanking);

enum class BaselineKind { kSquare, kCircle };

std::string_view to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(std::string_view text);

// Square: every pixel. Circle: pixel centres within min(w, h) / 2 of the
// image centre ((w - 1) / 2, (h - 1) / 2).
MaskImage baseline_mask(BaselineKind kind, std::size_t width, std::size_t height);

}  // namespace tactloc

#endif  // TACTLOC_METRICS_H_

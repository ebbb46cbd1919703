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

#include "tactloc/metrics.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tactloc/errors.h"

namespace tactloc {

double region_iou(const MaskImage& pred, const MaskImage& gt) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw std::invalid_argument("region_iou: mask sizes differ");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
    inter += (pred[i] && gt[i]) ? 1 : 0;
    uni += (pred[i] || gt[i]) ? 1 : 0;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::string_view to_string(ApFlavor flavor) {
  return flavor == ApFlavor::kRanking ? "ranking" : "interpolated";
}

ApFlavor parse_ap_flavor(std::string_view text) {
  if (text == "ranking") return ApFlavor::kRanking;
  if (text == "interpolated") return ApFlavor::kInterpolated;
  throw ValidationError("unknown AP flavor '" + std::string(text) + "'");
}

double pixel_average_precision(std::span<const double> scores,
                               const MaskImage& gt, ApFlavor flavor) {
  if (scores.size() != gt.pixel_count()) {
    throw std::invalid_argument("pixel_average_precision: size mismatch");
  }
  const std::size_t positives = gt.count();
  if (positives == 0) {
    throw std::invalid_argument("pixel_average_precision: empty ground truth");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  // Precision at each positive's rank, in rank order. Extended precision
  // makes the result the correctly rounded rational in practice, independent
  // of summation order.
  std::vector<long double> precisions;
  precisions.reserve(positives);
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (!gt[order[rank]]) continue;
    ++hits;
    precisions.push_back(static_cast<long double>(hits) /
                         static_cast<long double>(rank + 1));
  }
  if (flavor == ApFlavor::kInterpolated) {
    for (std::size_t k = precisions.size(); k-- > 1;) {
      precisions[k - 1] = std::max(precisions[k - 1], precisions[k]);
    }
  }
  long double total = 0.0L;
  for (long double p : precisions) total += p;
  return static_cast<double>(total / static_cast<long double>(positives));
}

double pixel_average_precision(const SaliencyMap& saliency, const MaskImage& gt,
                               ApFlavor flavor) {
  if (saliency.width != gt.width() || saliency.height != gt.height()) {
    throw std::invalid_argument("pixel_average_precision: size mismatch");
  }
  return pixel_average_precision(saliency.scores, gt, flavor);
}

std::string_view to_string(BaselineKind kind) {
  return kind == BaselineKind::kSquare ? "square" : "circle";
}

BaselineKind parse_baseline_kind(std::string_view text) {
  if (text == "square") return BaselineKind::kSquare;
  if (text == "circle") return BaselineKind::kCircle;
  throw ValidationError("unknown baseline '" + std::string(text) + "'");
}

MaskImage baseline_mask(BaselineKind kind, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("baseline_mask: zero extent");
  }
  MaskImage mask(width, height);
  const double cx = (static_cast<double>(width) - 1.0) / 2.0;
  const double cy = (static_cast<double>(height) - 1.0) / 2.0;
  const double r = static_cast<double>(std::min(width, height)) / 2.0;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (kind == BaselineKind::kSquare) {
        mask.set(x, y, true);
        continue;
      }
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      mask.set(x, y, dx * dx + dy * dy <= r * r);
    }
  }
  return mask;
}

}  // namespace tactloc

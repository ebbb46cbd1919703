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

#include "tactloc/split.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "tactloc/errors.h"
#include "tactloc/rng.h"

namespace tactloc {

std::vector<std::string> shuffled_videos(
    std::span<const TouchInstance> instances, std::uint64_t seed) {
  std::set<std::string> unique;
  for (const TouchInstance& t : instances) unique.insert(t.video_id);
  std::vector<std::string> videos(unique.begin(), unique.end());
  Rng rng(seed, {0x5911750ULL});
  for (std::size_t i = videos.size(); i > 1; --i) {
    std::swap(videos[i - 1], videos[rng.index(i)]);
  }
  return videos;
}

VideoSplit split_by_video(std::span<const TouchInstance> instances,
                          double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test fraction must lie in (0, 1)");
  }
  const std::vector<std::string> order = shuffled_videos(instances, seed);
  if (order.size() < 2) {
    throw ValidationError("video split needs at least 2 videos, got " +
                          std::to_string(order.size()));
  }
  std::map<std::string, std::size_t> count;
  for (const TouchInstance& t : instances) ++count[t.video_id];
  const double total = static_cast<double>(instances.size());

  std::size_t best_k = 1;
  double best_gap = INFINITY;
  std::size_t cum = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    cum += count[order[k - 1]];
    const double gap = std::abs(static_cast<double>(cum) / total - test_fraction);
    if (gap < best_gap) {
      best_gap = gap;
      best_k = k;
    }
  }
  VideoSplit out;
  std::set<std::string> test_set(order.begin(), order.begin() + best_k);
  for (const std::string& v : order) {
    (test_set.contains(v) ? out.test_videos : out.train_videos).push_back(v);
  }
  std::sort(out.test_videos.begin(), out.test_videos.end());
  std::sort(out.train_videos.begin(), out.train_videos.end());
  for (const TouchInstance& t : instances) {
    (test_set.contains(t.video_id) ? out.test : out.train).push_back(t);
  }
  return out;
}

std::vector<TouchInstance> cap_instances_per_video(
    std::span<const TouchInstance> instances, std::size_t max_per_group) {
  if (max_per_group == 0) return {instances.begin(), instances.end()};
  std::map<std::pair<std::string, std::string>, std::size_t> used;
  std::vector<TouchInstance> out;
  for (const TouchInstance& t : instances) {
    if (used[{t.video_id, t.category}]++ < max_per_group) out.push_back(t);
  }
  return out;
}

}  // namespace tactloc

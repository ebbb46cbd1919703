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

#ifndef TACTLOC_SPLIT_H_
#define TACTLOC_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tactloc/touch_instance.h"

namespace tactloc {

struct VideoSplit {
  std::vector<TouchInstance> train;
  std::vector<TouchInstance> test;
  std::vector<std::string> train_videos;
  std::vector<std::string> test_videos;
};

// Whole-video split. Videos (sorted by id) are shuffled with `seed`; the test
// split takes the shortest prefix k in [1, V-1] whose instance share is
// closest to `test_fraction`. Throws ValidationError unless
// 0 < test_fraction < 1 and there are at least two videos.
VideoSplit split_by_video(std::span<const TouchInstance> instances,
                          double test_fraction, std::uint64_t seed);

// The shuffled video order used by split_by_video.
std::vector<std::string> shuffled_videos(std::span<const TouchInstance> instances,
                                         std::uint64_t seed);

// Keeps at most `max_per_group` instances per (video, category), in input
// order. 0 means unlimited.
std::vector<TouchInstance> cap_instances_per_video(
    std::span<const TouchInstance> instances, std::size_t max_per_group);

}  // namespace tactloc

#endif  // TACTLOC_SPLIT_H_

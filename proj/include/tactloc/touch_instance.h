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

#ifndef TACTLOC_TOUCH_INSTANCE_H_
#define TACTLOC_TOUCH_INSTANCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tactloc/manifest.h"

namespace tactloc {

// A press-and-release contact: consecutive frames of one video sharing one
// category label.
struct TouchInstance {
  // "<video_id>:<start>-<end>"
  std::string instance_id;
  std::string video_id;
  std::string category;
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  // Sample ids ordered by frame index; members[k] is frame start + k.
  std::vector<std::string> members;

  std::size_t length() const { return static_cast<std::size_t>(end - start + 1); }
  bool operator==(const TouchInstance&) const = default;
};

std::string make_instance_id(const std::string& video_id, std::uint64_t start,
                             std::uint64_t end);

// Groups records by video, sorts by frame index, and merges maximal runs of
// consecutive indices with one label. Input order is irrelevant; the result
// partitions the input and is ordered by (video_id, start).
std::vector<TouchInstance> extract_touch_instances(
    std::span<const SampleRecord> records);

// Records that carry a tactile frame.
std::vector<SampleRecord> touch_records(std::span<const SampleRecord> records);

}  // namespace tactloc

#endif  // TACTLOC_TOUCH_INSTANCE_H_

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

#include "tactloc/touch_instance.h"

#include <algorithm>
#include <map>
#include <utility>

namespace tactloc {

std::string make_instance_id(const std::string& video_id, std::uint64_t start,
                             std::uint64_t end) {
  return video_id + ":" + std::to_string(start) + "-" + std::to_string(end);
}

std::vector<TouchInstance> extract_touch_instances(
    std::span<const SampleRecord> records) {
  std::map<std::string, std::vector<const SampleRecord*>> by_video;
  for (const SampleRecord& r : records) by_video[r.video_id].push_back(&r);

  std::vector<TouchInstance> out;
  for (auto& [video, frames] : by_video) {
    std::sort(frames.begin(), frames.end(),
              [](const SampleRecord* a, const SampleRecord* b) {
                return a->frame_index < b->frame_index;
              });
    TouchInstance cur;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const SampleRecord& r = *frames[i];
      const bool extends = i > 0 && r.frame_index == cur.end + 1 &&
                           r.category == cur.category;
      if (!extends) {
        if (i > 0) {
          cur.instance_id = make_instance_id(cur.video_id, cur.start, cur.end);
          out.push_back(std::move(cur));
          cur = TouchInstance{};
        }
        cur.video_id = video;
        cur.category = r.category;
        cur.start = r.frame_index;
      }
      cur.end = r.frame_index;
      cur.members.push_back(r.sample_id);
    }
    if (!frames.empty()) {
      cur.instance_id = make_instance_id(cur.video_id, cur.start, cur.end);
      out.push_back(std::move(cur));
    }
  }
  return out;
}

std::vector<SampleRecord> touch_records(std::span<const SampleRecord> records) {
  std::vector<SampleRecord> out;
  for (const SampleRecord& r : records) {
    if (r.has_tactile()) out.push_back(r);
  }
  return out;
}

}  // namespace tactloc

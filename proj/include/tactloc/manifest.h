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

#ifndef TACTLOC_MANIFEST_H_
#define TACTLOC_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tactloc {

// One image (and, for in-domain samples, its synchronized tactile frame).
struct SampleRecord {
  std::string sample_id;
  std::string video_id;
  std::uint64_t frame_index = 0;
  std::string category;
  std::string image_path;
  // Absent for out-domain images.
  std::optional<std::string> tactile_path;
  std::string split;

  bool has_tactile() const { return tactile_path.has_value(); }
  bool operator==(const SampleRecord&) const = default;
};

struct Manifest {
  // From a `#categories=a,b,c` directive; empty when undeclared.
  std::vector<std::string> categories;
  std::vector<SampleRecord> records;
};

// Manifest text: one record per line, tab-separated key=value fields
//   sample_id video_id frame_index category image_path [tactile_path] [split]
// Order is preserved. Throws FormatError naming the line for malformed lines,
// duplicate (video_id, frame_index) keys and, when categories are declared
// (by directive or argument), unknown categories.
Manifest parse_manifest_text(std::string_view text,
                             std::span<const std::string> categories = {});
Manifest parse_manifest(const std::filesystem::path& path,
                        std::span<const std::string> categories = {});

std::string serialize_manifest(std::span<const SampleRecord> records,
                               std::span<const std::string> categories = {});
void write_manifest(const std::filesystem::path& path,
                    std::span<const SampleRecord> records,
                    std::span<const std::string> categories = {});

}  // namespace tactloc

#endif  // TACTLOC_MANIFEST_H_

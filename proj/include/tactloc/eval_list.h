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

#ifndef TACTLOC_EVAL_LIST_H_
#define TACTLOC_EVAL_LIST_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tactloc {

// One localization query: an image, the category to find, its mask and the
// touch instance supplying the tactile query. Paths are resolved against the
// list file's directory when read.
struct EvalEntry {
  std::string sample_id;
  std::string image_path;
  std::string category;
  std::string mask_path;
  std::string instance_id;
  // Optional raster used as the overlay base.
  std::string render_path;

  bool operator==(const EvalEntry&) const = default;
};

// A two-query scene.
struct InteractiveEntry {
  std::string sample_id;
  std::string image_path;
  std::string render_path;
  std::string category;
  std::string mask_path;
  std::string instance_id;
  std::string category2;
  std::string mask2_path;
  std::string instance2_id;

  bool operator==(const InteractiveEntry&) const = default;
};

std::vector<EvalEntry> read_eval_list(const std::filesystem::path& path);
std::string format_eval_list(std::span<const EvalEntry> entries);

std::vector<InteractiveEntry> read_interactive_list(
    const std::filesystem::path& path);
std::string format_interactive_list(std::span<const InteractiveEntry> entries);

}  // namespace tactloc

#endif  // TACTLOC_EVAL_LIST_H_

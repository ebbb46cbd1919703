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

#include "tactloc/manifest.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "tactloc/errors.h"
#include "tactloc/raster.h"
#include "tactloc/records.h"

namespace tactloc {
namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "sample_id", "video_id", "frame_index", "category",
    "image_path", "tactile_path", "split"};

std::string at_line(std::size_t line) {
  return "manifest line " + std::to_string(line) + ": ";
}

std::uint64_t parse_frame_index(const std::string& text, std::size_t line) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw FormatError(at_line(line) + "frame_index '" + text +
                      "' is not a non-negative integer");
  }
  return v;
}

}  // namespace

Manifest parse_manifest_text(std::string_view text,
                             std::span<const std::string> categories) {
  KeyValueFile file = parse_key_value_text(text);
  Manifest m;
  if (!categories.empty()) {
    m.categories.assign(categories.begin(), categories.end());
  } else if (auto it = file.directives.find("categories");
             it != file.directives.end()) {
    m.categories = split_list(it->second, ',');
  }
  const std::set<std::string> declared(m.categories.begin(),
                                       m.categories.end());

  std::map<std::pair<std::string, std::uint64_t>, std::size_t> seen;
  m.records.reserve(file.records.size());
  for (const KeyValueRecord& r : file.records) {
    for (const auto& [k, v] : r.fields) {
      if (!kKnownKeys.contains(k)) {
        throw FormatError(at_line(r.line) + "unknown field '" + k + "'");
      }
    }
    SampleRecord s;
    try {
      s.sample_id = r.get("sample_id");
      s.video_id = r.get("video_id");
      s.frame_index = parse_frame_index(r.get("frame_index"), r.line);
      s.category = r.get("category");
      s.image_path = r.get("image_path");
    } catch (const FormatError& e) {
      const std::string what = e.what();
      throw FormatError(what.rfind("manifest", 0) == 0 ? what : "manifest " + what);
    }
    if (r.has("tactile_path")) s.tactile_path = r.get("tactile_path");
    s.split = r.get_or("split", "");
    if (s.sample_id.empty() || s.video_id.empty() || s.category.empty()) {
      throw FormatError(at_line(r.line) + "empty sample_id, video_id or category");
    }
    if (!declared.empty() && !declared.contains(s.category)) {
      throw FormatError(at_line(r.line) + "unknown category '" + s.category + "'");
    }
    auto [it, inserted] = seen.emplace(std::pair{s.video_id, s.frame_index}, r.line);
    if (!inserted) {
      throw FormatError(at_line(r.line) + "duplicate (video_id, frame_index) = (" +
                        s.video_id + ", " + std::to_string(s.frame_index) +
                        "), first seen on line " + std::to_string(it->second));
    }
    m.records.push_back(std::move(s));
  }
  return m;
}

Manifest parse_manifest(const std::filesystem::path& path,
                        std::span<const std::string> categories) {
  return parse_manifest_text(read_file_bytes(path), categories);
}

std::string serialize_manifest(std::span<const SampleRecord> records,
                               std::span<const std::string> categories) {
  std::string out;
  if (!categories.empty()) {
    out += "#categories=";
    for (std::size_t i = 0; i < categories.size(); ++i) {
      if (i > 0) out += ',';
      out += categories[i];
    }
    out += '\n';
  }
  for (const SampleRecord& s : records) {
    std::vector<std::pair<std::string, std::string>> fields = {
        {"sample_id", s.sample_id},
        {"video_id", s.video_id},
        {"frame_index", std::to_string(s.frame_index)},
        {"category", s.category},
        {"image_path", s.image_path}};
    if (s.tactile_path) fields.emplace_back("tactile_path", *s.tactile_path);
    if (!s.split.empty()) fields.emplace_back("split", s.split);
    out += format_key_value_line(fields);
    out += '\n';
  }
  return out;
}

void write_manifest(const std::filesystem::path& path,
                    std::span<const SampleRecord> records,
                    std::span<const std::string> categories) {
  write_file_bytes(path, serialize_manifest(records, categories));
}

}  // namespace tactloc

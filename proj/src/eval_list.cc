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

#include "tactloc/eval_list.h"

#include <set>

#include "tactloc/errors.h"
#include "tactloc/records.h"

namespace tactloc {
namespace {

void check_keys(const KeyValueRecord& r, const std::set<std::string>& allowed,
                const std::filesystem::path& path) {
  for (const auto& [key, value] : r.fields) {
    if (!allowed.contains(key)) {
      throw FormatError(path.string() + " line " + std::to_string(r.line) +
                        ": unknown field '" + key + "'");
    }
  }
}

std::string resolved(const std::filesystem::path& base, const std::string& stored) {
  if (stored.empty()) return stored;
  return resolve_relative(base, stored).string();
}

}  // namespace

std::vector<EvalEntry> read_eval_list(const std::filesystem::path& path) {
  static const std::set<std::string> allowed = {
      "sample_id", "image_path", "category", "mask_path", "instance_id", "render_path"};
  const KeyValueFile file = read_key_value_file(path);
  std::vector<EvalEntry> out;
  for (const KeyValueRecord& r : file.records) {
    check_keys(r, allowed, path);
    EvalEntry e;
    e.sample_id = r.get("sample_id");
    e.image_path = resolved(path, r.get("image_path"));
    e.category = r.get("category");
    e.mask_path = resolved(path, r.get("mask_path"));
    e.instance_id = r.get_or("instance_id", "");
    e.render_path = resolved(path, r.get_or("render_path", ""));
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_eval_list(std::span<const EvalEntry> entries) {
  std::string out;
  for (const EvalEntry& e : entries) {
    std::vector<std::pair<std::string, std::string>> f = {
        {"sample_id", e.sample_id},
        {"image_path", e.image_path},
        {"category", e.category},
        {"mask_path", e.mask_path}};
    if (!e.instance_id.empty()) f.emplace_back("instance_id", e.instance_id);
    if (!e.render_path.empty()) f.emplace_back("render_path", e.render_path);
    out += format_key_value_line(f) + "\n";
  }
  return out;
}

std::vector<InteractiveEntry> read_interactive_list(
    const std::filesystem::path& path) {
  static const std::set<std::string> allowed = {
      "sample_id", "image_path",  "render_path", "category",    "mask_path",
      "instance_id", "category2", "mask2_path", "instance2_id"};
  const KeyValueFile file = read_key_value_file(path);
  std::vector<InteractiveEntry> out;
  for (const KeyValueRecord& r : file.records) {
    check_keys(r, allowed, path);
    InteractiveEntry e;
    e.sample_id = r.get("sample_id");
    e.image_path = resolved(path, r.get("image_path"));
    e.render_path = resolved(path, r.get_or("render_path", ""));
    e.category = r.get("category");
    e.mask_path = resolved(path, r.get("mask_path"));
    e.instance_id = r.get_or("instance_id", "");
    e.category2 = r.get("category2");
    e.mask2_path = resolved(path, r.get("mask2_path"));
    e.instance2_id = r.get_or("instance2_id", "");
    if (e.category == e.category2) {
      throw FormatError(path.string() + " line " + std::to_string(r.line) +
                        ": the two queries share category '" + e.category + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_interactive_list(std::span<const InteractiveEntry> entries) {
  std::string out;
  for (const InteractiveEntry& e : entries) {
    std::vector<std::pair<std::string, std::string>> f = {
        {"sample_id", e.sample_id}, {"image_path", e.image_path}};
    if (!e.render_path.empty()) f.emplace_back("render_path", e.render_path);
    f.emplace_back("category", e.category);
    f.emplace_back("mask_path", e.mask_path);
    if (!e.instance_id.empty()) f.emplace_back("instance_id", e.instance_id);
    f.emplace_back("category2", e.category2);
    f.emplace_back("mask2_path", e.mask2_path);
    if (!e.instance2_id.empty()) f.emplace_back("instance2_id", e.instance2_id);
    out += format_key_value_line(f) + "\n";
  }
  return out;
}

}  // namespace tactloc

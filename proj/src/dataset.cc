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

#include "tactloc/dataset.h"

#include "tactloc/errors.h"

namespace tactloc {
namespace {

std::string normalized_split(const std::string& split) {
  return split.empty() ? "train" : split;
}

}  // namespace

CorpusIndex::CorpusIndex(const std::filesystem::path& manifest_path)
    : CorpusIndex(parse_manifest(manifest_path), manifest_path.parent_path()) {}

CorpusIndex::CorpusIndex(Manifest manifest, const std::filesystem::path& base_dir)
    : categories_(std::move(manifest.categories)), records_(std::move(manifest.records)) {
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (base_dir / path).string();
  };
  for (SampleRecord& r : records_) {
    r.image_path = resolve(r.image_path);
    if (r.tactile_path) r.tactile_path = resolve(*r.tactile_path);
    r.split = normalized_split(r.split);
  }
  index();
}

void CorpusIndex::index() {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!record_index_.emplace(records_[i].sample_id, i).second) {
      throw ValidationError("duplicate sample_id '" + records_[i].sample_id + "'");
    }
  }
  instances_ = extract_touch_instances(touch_records(records_));
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const TouchInstance& t = instances_[i];
    const std::string& split = record(t.members.front()).split;
    for (const std::string& m : t.members) {
      if (record(m).split != split) {
        throw ValidationError("touch instance '" + t.instance_id +
                              "' spans more than one split");
      }
    }
    instance_index_.emplace(t.instance_id, i);
  }
}

std::vector<TouchInstance> CorpusIndex::instances_in(const std::string& split) const {
  std::vector<TouchInstance> out;
  for (const TouchInstance& t : instances_) {
    if (split_of(t) == split) out.push_back(t);
  }
  return out;
}

std::vector<SampleRecord> CorpusIndex::out_domain() const {
  std::vector<SampleRecord> out;
  for (const SampleRecord& r : records_) {
    if (!r.has_tactile() && r.split == "train") out.push_back(r);
  }
  return out;
}

const SampleRecord& CorpusIndex::record(const std::string& sample_id) const {
  auto it = record_index_.find(sample_id);
  if (it == record_index_.end()) {
    throw ValidationError("unknown sample_id '" + sample_id + "'");
  }
  return records_[it->second];
}

const TouchInstance& CorpusIndex::instance(const std::string& instance_id) const {
  auto it = instance_index_.find(instance_id);
  if (it == instance_index_.end()) {
    throw ValidationError("unknown touch instance '" + instance_id + "'");
  }
  return instances_[it->second];
}

const std::string& CorpusIndex::split_of(const TouchInstance& instance) const {
  return record(instance.members.front()).split;
}

}  // namespace tactloc

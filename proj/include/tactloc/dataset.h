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

#ifndef TACTLOC_DATASET_H_
#define TACTLOC_DATASET_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tactloc/manifest.h"
#include "tactloc/touch_instance.h"

namespace tactloc {

// A manifest with paths resolved against its directory and its touch
// instances. Records with an empty split tag count as training data.
class CorpusIndex {
 public:
  explicit CorpusIndex(const std::filesystem::path& manifest_path);
  CorpusIndex(Manifest manifest, const std::filesystem::path& base_dir);

  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<SampleRecord>& records() const { return records_; }
  const std::vector<TouchInstance>& instances() const { return instances_; }
  std::vector<TouchInstance> instances_in(const std::string& split) const;
  std::vector<TouchInstance> train_instances() const { return instances_in("train"); }
  // Training records without a tactile frame.
  std::vector<SampleRecord> out_domain() const;

  // Throw ValidationError for unknown ids.
  const SampleRecord& record(const std::string& sample_id) const;
  const TouchInstance& instance(const std::string& instance_id) const;
  const std::string& split_of(const TouchInstance& instance) const;

 private:
  void index();

  std::vector<std::string> categories_;
  std::vector<SampleRecord> records_;
  std::vector<TouchInstance> instances_;
  std::map<std::string, std::size_t> record_index_;
  std::map<std::string, std::size_t> instance_index_;
};

}  // namespace tactloc

#endif  // TACTLOC_DATASET_H_

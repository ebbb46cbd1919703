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

#ifndef TACTLOC_DEDUP_H_
#define TACTLOC_DEDUP_H_

#include <span>
#include <string>
#include <vector>

namespace tactloc {

struct DroppedDuplicate {
  std::string path;
  // The kept file with identical bytes.
  std::string duplicate_of;

  bool operator==(const DroppedDuplicate&) const = default;
};

struct DedupResult {
  std::vector<std::string> kept;
  std::vector<DroppedDuplicate> dropped;
};

// Exact-byte deduplication. Keeps the first occurrence (input order) of each
// distinct content. Throws IoError for unreadable files.
DedupResult dedup_by_content_hash(std::span<const std::string> paths);

}  // namespace tactloc

#endif  // TACTLOC_DEDUP_H_

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

#include "tactloc/dedup.h"

#include <cstdint>
#include <unordered_map>

#include "tactloc/raster.h"

namespace tactloc {
namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

DedupResult dedup_by_content_hash(std::span<const std::string> paths) {
  struct Kept {
    std::string path;
    std::string bytes;
  };
  std::unordered_map<std::uint64_t, std::vector<Kept>> buckets;
  DedupResult out;
  for (const std::string& path : paths) {
    std::string bytes = read_file_bytes(path);
    auto& bucket = buckets[fnv1a(bytes)];
    const Kept* twin = nullptr;
    for (const Kept& k : bucket) {
      if (k.bytes == bytes) {
        twin = &k;
        break;
      }
    }
    if (twin != nullptr) {
      out.dropped.push_back({path, twin->path});
    } else {
      out.kept.push_back(path);
      bucket.push_back({path, std::move(bytes)});
    }
  }
  return out;
}

}  // namespace tactloc

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

#ifndef TACTLOC_FEATURE_FILE_H_
#define TACTLOC_FEATURE_FILE_H_

#include <cstddef>
#include <filesystem>
#include <string>

#include "tactloc/tensor.h"

namespace tactloc {

// VTFT feature-map file, little-endian throughout:
//
//   offset  size  field
//   0       4     magic "VTFT"
//   4       2     version (1)
//   6       1     dtype (0 = float32)
//   7       1     reserved (0)
//   8       4     C
//   12      4     H
//   16      4     W
//   20      4*C*H*W  float32 payload in [c][h][w] order
//
// Embedding vectors are stored as C x 1 x 1 maps.
inline constexpr std::size_t kVtftHeaderSize = 20;
inline constexpr std::uint16_t kVtftVersion = 1;

std::string encode_feature_map(const FeatureMap& map);
// Throws FormatError on bad magic, unsupported version or dtype, and payload
// length != 4*C*H*W.
FeatureMap decode_feature_map(const std::string& bytes);

void save_feature_map(const FeatureMap& map, const std::filesystem::path& path);
FeatureMap load_feature_map(const std::filesystem::path& path);

}  // namespace tactloc

#endif  // TACTLOC_FEATURE_FILE_H_

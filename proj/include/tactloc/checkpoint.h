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

#ifndef TACTLOC_CHECKPOINT_H_
#define TACTLOC_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "tactloc/param_set.h"

namespace tactloc {

// Training state after `epoch` completed epochs. Randomness is derived from
// (seed, epoch, batch, slot), so the seed is the whole RNG state.
struct Checkpoint {
  std::uint64_t epoch = 0;
  std::uint64_t global_step = 0;
  std::uint64_t seed = 0;
  std::string config_echo;
  // Both encoders, with optimizer state.
  ParamSet params;

  bool operator==(const Checkpoint&) const = default;
};

// Binary layout, little-endian: "TLCK", u32 version, u64 epoch, u64 step,
// u64 seed, u64 + bytes config echo, u64 parameter count, then per parameter:
// u32 + bytes name, u8 trainable, u32 rank, u64 dims, f64 values, f64 first
// moment, f64 second moment, u64 step.
std::string encode_checkpoint(const Checkpoint& checkpoint);
// Throws FormatError for malformed input.
Checkpoint decode_checkpoint(const std::string& bytes);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::filesystem::path checkpoint_path(const std::filesystem::path& dir,
                                      std::uint64_t epoch);
// Highest-numbered ckpt-<n>.bin in `dir`; throws ValidationError when none.
std::filesystem::path latest_checkpoint(const std::filesystem::path& dir);

}  // namespace tactloc

#endif  // TACTLOC_CHECKPOINT_H_

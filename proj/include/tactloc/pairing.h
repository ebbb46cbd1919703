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

#ifndef TACTLOC_PAIRING_H_
#define TACTLOC_PAIRING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tactloc/manifest.h"
#include "tactloc/rng.h"
#include "tactloc/touch_instance.h"

namespace tactloc {

enum class PairKind { kInstance, kInDomain, kOutDomain };

std::string_view to_string(PairKind kind);

// One positive tactile/visual training pair.
struct PairSpec {
  PairKind kind = PairKind::kInstance;
  std::string category;
  std::string tactile_instance_id;
  std::size_t tactile_offset = 0;
  std::string tactile_sample_id;
  // Empty for out-domain pairs.
  std::string visual_instance_id;
  std::size_t visual_offset = 0;
  std::string visual_sample_id;

  bool operator==(const PairSpec&) const = default;
};

enum class FramePosition { kStart, kMiddle, kEnd };

std::string_view to_string(FramePosition pos);
FramePosition parse_frame_position(std::string_view text);

struct FrameRef {
  std::size_t offset = 0;
  std::string sample_id;
};

// Start: first member; End: last member; Middle: member floor(T/2).
FrameRef select_frame(const TouchInstance& instance, FramePosition pos);
// Offsets strictly between the endpoints, or {floor(T/2)} when T <= 2.
std::vector<std::size_t> middle_offsets(const TouchInstance& instance);

struct PairingOptions {
  // Draw in-domain pairs alongside touch-instance pairs.
  bool in_domain = true;
  // Probability that a non-out-domain slot uses in-domain pairing.
  double in_domain_share = 0.5;
  // Enables stage-2 out-domain slots.
  bool out_domain = true;
  // Restrict tactile frames to middle_offsets().
  bool middle_tactile_only = false;
};

struct CurriculumSchedule {
  std::size_t stage1_epochs = 20;
  std::size_t stage2_epochs = 10;
  double out_domain_ratio = 0.5;
  std::size_t freeze_epochs = 2;

  std::size_t total_epochs() const { return stage1_epochs + stage2_epochs; }
  // 1 or 2.
  int stage(std::size_t epoch) const { return epoch < stage1_epochs ? 1 : 2; }
  void validate() const;
};

// Training pools indexed by category.
class TrainingCorpus {
 public:
  TrainingCorpus(std::vector<TouchInstance> instances,
                 std::vector<SampleRecord> out_domain);

  const std::vector<TouchInstance>& instances() const { return instances_; }
  const std::vector<SampleRecord>& out_domain() const { return out_domain_; }
  // Categories with at least one instance, sorted.
  const std::vector<std::string>& categories() const { return categories_; }
  // Categories with both out-domain images and instances, sorted.
  const std::vector<std::string>& out_domain_categories() const {
    return out_categories_;
  }
  std::vector<const TouchInstance*> instances_of(const std::string& category) const;
  std::vector<const SampleRecord*> out_domain_of(const std::string& category) const;
  // Frames in the pool for the given stage (epoch sizing).
  std::size_t pool_size(int stage) const;

 private:
  std::vector<TouchInstance> instances_;
  std::vector<SampleRecord> out_domain_;
  std::vector<std::string> categories_;
  std::vector<std::string> out_categories_;
  std::map<std::string, std::vector<std::size_t>> instance_index_;
  std::map<std::string, std::vector<std::size_t>> out_index_;
};

// Tactile and visual offsets drawn independently and uniformly from one
// instance.
PairSpec pair_touch_instance(const TouchInstance& instance, Rng& rng,
                             const PairingOptions& options = {});
PairSpec pair_touch_instance(const TouchInstance& instance, std::uint64_t seed);

// Tactile from instance n, visual from instance m (n, m uniform, possibly
// equal) of one category. Throws std::invalid_argument for an empty list.
PairSpec pair_in_domain(std::span<const TouchInstance* const> instances,
                        Rng& rng, const PairingOptions& options = {});
PairSpec pair_in_domain(std::span<const TouchInstance> instances,
                        std::uint64_t seed);

// Tactile frame from a uniformly drawn instance of the image's category.
// Throws std::invalid_argument when the image carries a tactile frame or no
// instance matches its category.
PairSpec pair_out_domain(const SampleRecord& image,
                         std::span<const TouchInstance* const> instances,
                         Rng& rng, const PairingOptions& options = {});
PairSpec pair_out_domain(const SampleRecord& image,
                         std::span<const TouchInstance> instances,
                         std::uint64_t seed);

// Batch `batch_index` of `epoch`. Slot k uses the stream (seed, epoch,
// batch_index, k). Stage 1 draws touch-instance / in-domain pairs; stage 2
// makes each slot out-domain with probability out_domain_ratio. Throws
// std::invalid_argument when stage 2 needs out-domain images and there are
// none.
std::vector<PairSpec> sample_training_batch(const TrainingCorpus& corpus,
                                            const CurriculumSchedule& schedule,
                                            const PairingOptions& options,
                                            std::size_t epoch,
                                            std::size_t batch_index,
                                            std::size_t batch_size,
                                            std::uint64_t seed);

// Audit export: one key=value line per pair.
std::string format_pairs(std::span<const PairSpec> pairs, std::size_t epoch,
                         std::size_t batch_index);

}  // namespace tactloc

#endif  // TACTLOC_PAIRING_H_

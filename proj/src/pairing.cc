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

#include "tactloc/pairing.h"

#include <stdexcept>
#include <utility>

#include "tactloc/errors.h"
#include "tactloc/records.h"

namespace tactloc {
namespace {

std::size_t draw_tactile_offset(const TouchInstance& t, Rng& rng,
                                const PairingOptions& options) {
  if (options.middle_tactile_only) {
    const std::vector<std::size_t> mids = middle_offsets(t);
    return mids[rng.index(mids.size())];
  }
  return rng.index(t.length());
}

PairSpec make_pair(PairKind kind, const TouchInstance& tactile,
                   std::size_t tactile_offset, const TouchInstance& visual,
                   std::size_t visual_offset) {
  PairSpec p;
  p.kind = kind;
  p.category = tactile.category;
  p.tactile_instance_id = tactile.instance_id;
  p.tactile_offset = tactile_offset;
  p.tactile_sample_id = tactile.members.at(tactile_offset);
  p.visual_instance_id = visual.instance_id;
  p.visual_offset = visual_offset;
  p.visual_sample_id = visual.members.at(visual_offset);
  return p;
}

std::vector<const TouchInstance*> pointers(std::span<const TouchInstance> v) {
  std::vector<const TouchInstance*> out;
  out.reserve(v.size());
  for (const TouchInstance& t : v) out.push_back(&t);
  return out;
}

}  // namespace

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kInstance: return "instance";
    case PairKind::kInDomain: return "in-domain";
    case PairKind::kOutDomain: return "out-domain";
  }
  return "?";
}

std::string_view to_string(FramePosition pos) {
  switch (pos) {
    case FramePosition::kStart: return "start";
    case FramePosition::kMiddle: return "middle";
    case FramePosition::kEnd: return "end";
  }
  return "?";
}

FramePosition parse_frame_position(std::string_view text) {
  if (text == "start") return FramePosition::kStart;
  if (text == "middle") return FramePosition::kMiddle;
  if (text == "end") return FramePosition::kEnd;
  throw ValidationError("unknown frame position '" + std::string(text) + "'");
}

FrameRef select_frame(const TouchInstance& instance, FramePosition pos) {
  if (instance.members.empty()) throw std::invalid_argument("empty touch instance");
  std::size_t offset = 0;
  switch (pos) {
    case FramePosition::kStart: offset = 0; break;
    case FramePosition::kMiddle: offset = instance.members.size() / 2; break;
    case FramePosition::kEnd: offset = instance.members.size() - 1; break;
  }
  return {offset, instance.members[offset]};
}

std::vector<std::size_t> middle_offsets(const TouchInstance& instance) {
  const std::size_t t = instance.members.size();
  if (t == 0) throw std::invalid_argument("empty touch instance");
  if (t <= 2) return {t / 2};
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k + 1 < t; ++k) out.push_back(k);
  return out;
}

void CurriculumSchedule::validate() const {
  if (!(out_domain_ratio >= 0.0 && out_domain_ratio <= 1.0)) {
    throw ValidationError("out-domain ratio must lie in [0, 1]");
  }
}

TrainingCorpus::TrainingCorpus(std::vector<TouchInstance> instances,
                               std::vector<SampleRecord> out_domain)
    : instances_(std::move(instances)), out_domain_(std::move(out_domain)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    instance_index_[instances_[i].category].push_back(i);
  }
  for (std::size_t i = 0; i < out_domain_.size(); ++i) {
    if (out_domain_[i].has_tactile()) {
      throw std::invalid_argument("out-domain record '" +
                                  out_domain_[i].sample_id +
                                  "' carries a tactile frame");
    }
    out_index_[out_domain_[i].category].push_back(i);
  }
  for (const auto& [cat, idx] : instance_index_) categories_.push_back(cat);
  for (const auto& [cat, idx] : out_index_) {
    if (instance_index_.contains(cat)) out_categories_.push_back(cat);
  }
}

std::vector<const TouchInstance*> TrainingCorpus::instances_of(
    const std::string& category) const {
  std::vector<const TouchInstance*> out;
  if (auto it = instance_index_.find(category); it != instance_index_.end()) {
    for (std::size_t i : it->second) out.push_back(&instances_[i]);
  }
  return out;
}

std::vector<const SampleRecord*> TrainingCorpus::out_domain_of(
    const std::string& category) const {
  std::vector<const SampleRecord*> out;
  if (auto it = out_index_.find(category); it != out_index_.end()) {
    for (std::size_t i : it->second) out.push_back(&out_domain_[i]);
  }
  return out;
}

std::size_t TrainingCorpus::pool_size(int stage) const {
  std::size_t frames = 0;
  for (const TouchInstance& t : instances_) frames += t.length();
  if (stage == 2) frames += out_domain_.size();
  return frames;
}

PairSpec pair_touch_instance(const TouchInstance& instance, Rng& rng,
                             const PairingOptions& options) {
  if (instance.members.empty()) throw std::invalid_argument("empty touch instance");
  const std::size_t j = draw_tactile_offset(instance, rng, options);
  const std::size_t i = rng.index(instance.length());
  return make_pair(PairKind::kInstance, instance, j, instance, i);
}

PairSpec pair_touch_instance(const TouchInstance& instance, std::uint64_t seed) {
  Rng rng(seed);
  return pair_touch_instance(instance, rng);
}

PairSpec pair_in_domain(std::span<const TouchInstance* const> instances,
                        Rng& rng, const PairingOptions& options) {
  if (instances.empty()) {
    throw std::invalid_argument("in-domain pairing needs at least one instance");
  }
  const TouchInstance& n = *instances[rng.index(instances.size())];
  const TouchInstance& m = *instances[rng.index(instances.size())];
  if (n.category != m.category) {
    throw std::invalid_argument("in-domain pairing across categories");
  }
  const std::size_t j = draw_tactile_offset(n, rng, options);
  const std::size_t i = rng.index(m.length());
  return make_pair(PairKind::kInDomain, n, j, m, i);
}

PairSpec pair_in_domain(std::span<const TouchInstance> instances,
                        std::uint64_t seed) {
  Rng rng(seed);
  const auto ptrs = pointers(instances);
  return pair_in_domain(ptrs, rng);
}

PairSpec pair_out_domain(const SampleRecord& image,
                         std::span<const TouchInstance* const> instances,
                         Rng& rng, const PairingOptions& options) {
  if (image.has_tactile()) {
    throw std::invalid_argument("out-domain image '" + image.sample_id +
                                "' carries a tactile frame");
  }
  std::vector<const TouchInstance*> matching;
  for (const TouchInstance* t : instances) {
    if (t->category == image.category) matching.push_back(t);
  }
  if (matching.empty()) {
    throw std::invalid_argument("no touch instance of category '" +
                                image.category + "' for out-domain image '" +
                                image.sample_id + "'");
  }
  const TouchInstance& n = *matching[rng.index(matching.size())];
  PairSpec p;
  p.kind = PairKind::kOutDomain;
  p.category = image.category;
  p.tactile_instance_id = n.instance_id;
  p.tactile_offset = draw_tactile_offset(n, rng, options);
  p.tactile_sample_id = n.members[p.tactile_offset];
  p.visual_sample_id = image.sample_id;
  return p;
}

PairSpec pair_out_domain(const SampleRecord& image,
                         std::span<const TouchInstance> instances,
                         std::uint64_t seed) {
  Rng rng(seed);
  const auto ptrs = pointers(instances);
  return pair_out_domain(image, ptrs, rng);
}

std::vector<PairSpec> sample_training_batch(const TrainingCorpus& corpus,
                                            const CurriculumSchedule& schedule,
                                            const PairingOptions& options,
                                            std::size_t epoch,
                                            std::size_t batch_index,
                                            std::size_t batch_size,
                                            std::uint64_t seed) {
  schedule.validate();
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  if (corpus.categories().empty()) {
    throw std::invalid_argument("training corpus has no touch instances");
  }
  const bool stage2 = schedule.stage(epoch) == 2 && options.out_domain &&
                      schedule.out_domain_ratio > 0.0;
  if (stage2 && corpus.out_domain_categories().empty()) {
    throw std::invalid_argument(
        "stage 2 requested but the out-domain corpus is empty");
  }
  std::vector<PairSpec> batch;
  batch.reserve(batch_size);
  for (std::size_t slot = 0; slot < batch_size; ++slot) {
    Rng rng(seed, {epoch, batch_index, slot});
    // Always consumed so that stage 1 and a rho = 0 stage 2 draw identically.
    const double coin = rng.uniform();
    if (stage2 && coin < schedule.out_domain_ratio) {
      const auto& cats = corpus.out_domain_categories();
      const std::string& cat = cats[rng.index(cats.size())];
      const auto images = corpus.out_domain_of(cat);
      const SampleRecord& image = *images[rng.index(images.size())];
      const auto instances = corpus.instances_of(cat);
      batch.push_back(pair_out_domain(image, instances, rng, options));
      continue;
    }
    const auto& cats = corpus.categories();
    const std::string& cat = cats[rng.index(cats.size())];
    const auto instances = corpus.instances_of(cat);
    const bool in_domain = rng.uniform() < options.in_domain_share;
    if (options.in_domain && in_domain) {
      batch.push_back(pair_in_domain(instances, rng, options));
    } else {
      const TouchInstance& t = *instances[rng.index(instances.size())];
      batch.push_back(pair_touch_instance(t, rng, options));
    }
  }
  return batch;
}

std::string format_pairs(std::span<const PairSpec> pairs, std::size_t epoch,
                         std::size_t batch_index) {
  std::string out;
  for (const PairSpec& p : pairs) {
    out += format_key_value_line({
        {"epoch", std::to_string(epoch)},
        {"batch", std::to_string(batch_index)},
        {"kind", std::string(to_string(p.kind))},
        {"category", p.category},
        {"tactile", p.tactile_instance_id + "@" + std::to_string(p.tactile_offset)},
        {"tactile_sample", p.tactile_sample_id},
        {"visual", p.visual_instance_id.empty()
                       ? p.visual_sample_id
                       : p.visual_instance_id + "@" + std::to_string(p.visual_offset)},
        {"visual_sample", p.visual_sample_id}});
    out += '\n';
  }
  return out;
}

}  // namespace tactloc

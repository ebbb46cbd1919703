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

#ifndef TACTLOC_TESTS_FIXTURES_H_
#define TACTLOC_TESTS_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tactloc/manifest.h"
#include "tactloc/prompt_filter.h"
#include "tactloc/rng.h"
#include "tactloc/touch_instance.h"

namespace tactloc::testing {

inline std::string pad4(std::uint64_t v) {
  std::string s = std::to_string(v);
  return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

inline SampleRecord touch_record(const std::string& video, std::uint64_t frame,
                                 const std::string& category) {
  SampleRecord r;
  r.sample_id = video + "_f" + pad4(frame);
  r.video_id = video;
  r.frame_index = frame;
  r.category = category;
  r.image_path = "visual/" + r.sample_id + ".vtft";
  r.tactile_path = "tactile/" + r.sample_id + ".vtft";
  r.split = "train";
  return r;
}

// Shuffled touch records over a few videos, with index gaps and label
// changes inside videos. At most `max_records` records.
inline std::vector<SampleRecord> random_touch_records(Rng& rng, std::size_t max_records) {
  static const std::vector<std::string> kLabels = {"brick", "grass", "metal"};
  std::vector<SampleRecord> out;
  const std::size_t videos = 1 + rng.index(6);
  for (std::size_t v = 0; v < videos && out.size() < max_records; ++v) {
    const std::string vid = "v" + std::to_string(v);
    std::uint64_t frame = rng.index(50);
    std::string label = kLabels[rng.index(kLabels.size())];
    const std::size_t n = 1 + rng.index(max_records / videos + 1);
    for (std::size_t k = 0; k < n && out.size() < max_records; ++k) {
      out.push_back(touch_record(vid, frame, label));
      const double u = rng.uniform();
      if (u < 0.1) {
        frame += 2 + rng.index(5);  // gap
      } else {
        frame += 1;
      }
      if (rng.uniform() < 0.1) label = kLabels[rng.index(kLabels.size())];
    }
  }
  std::shuffle(out.begin(), out.end(), rng.engine());
  return out;
}

// Connected components of the "same video, next index, same label" relation,
// found by testing every ordered pair of records.
inline std::set<std::set<std::string>> adjacency_oracle(const std::vector<SampleRecord>& records) {
  const std::size_t n = records.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SampleRecord& a = records[i];
      const SampleRecord& b = records[j];
      if (a.video_id == b.video_id && a.frame_index + 1 == b.frame_index &&
          a.category == b.category) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::map<std::size_t, std::set<std::string>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].insert(records[i].sample_id);
  std::set<std::set<std::string>> out;
  for (auto& [root, members] : groups) out.insert(members);
  return out;
}

inline std::set<std::set<std::string>> as_partition(const std::vector<TouchInstance>& instances) {
  std::set<std::set<std::string>> out;
  for (const TouchInstance& t : instances) out.insert({t.members.begin(), t.members.end()});
  return out;
}

// Instances spread over `videos` videos, 1-4 per video.
inline std::vector<TouchInstance> random_instances(Rng& rng, std::size_t videos) {
  std::vector<TouchInstance> out;
  for (std::size_t v = 0; v < videos; ++v) {
    const std::size_t n = 1 + rng.index(4);
    std::uint64_t start = 0;
    for (std::size_t k = 0; k < n; ++k) {
      TouchInstance t;
      t.video_id = "video" + std::to_string(v);
      t.category = "c" + std::to_string(rng.index(3));
      t.start = start;
      t.end = start + rng.index(5);
      for (std::uint64_t f = t.start; f <= t.end; ++f) t.members.push_back(t.video_id + "_" + std::to_string(f));
      t.instance_id = make_instance_id(t.video_id, t.start, t.end);
      start = t.end + 3;
      out.push_back(t);
    }
  }
  return out;
}

inline std::vector<double> random_embedding(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.normal();
  return v;
}

// Retained iff the positive prompt's cosine beats every negative strictly.
inline std::vector<std::string> argmax_oracle(const std::vector<ImageEmbedding>& images,
                                              const PromptSet& prompts) {
  auto cosine = [](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      d += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    return d / std::sqrt(na * nb);
  };
  std::vector<std::string> kept;
  for (const ImageEmbedding& img : images) {
    const double pos = cosine(img.vector, prompts.positive.embedding);
    double best_neg = -INFINITY;
    for (const Prompt& p : prompts.negatives) best_neg = std::max(best_neg, cosine(img.vector, p.embedding));
    if (pos > best_neg) kept.push_back(img.id);
  }
  return kept;
}

inline PromptSet random_prompt_set(Rng& rng, std::size_t dim, std::size_t negatives) {
  PromptSet ps;
  ps.category = "brick";
  ps.positive = {"a photo of brick", random_embedding(rng, dim)};
  for (std::size_t k = 0; k < negatives; ++k) {
    ps.negatives.push_back({"negative " + std::to_string(k), random_embedding(rng, dim)});
  }
  return ps;
}

}  // namespace tactloc::testing

#endif  // TACTLOC_TESTS_FIXTURES_H_

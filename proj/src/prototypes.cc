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

#include "tactloc/prototypes.h"

#include <algorithm>
#include <stdexcept>

#include "tactloc/pairing.h"

namespace tactloc {

const CategoryPrototypes& PrototypeTable::at(const std::string& category) const {
  auto it = categories.find(category);
  if (it == categories.end()) {
    throw std::out_of_range("no prototype for category '" + category + "'");
  }
  return it->second;
}

std::map<std::string, std::vector<TouchInstance>> group_by_category(
    const std::vector<TouchInstance>& instances) {
  std::map<std::string, std::vector<TouchInstance>> out;
  for (const TouchInstance& t : instances) out[t.category].push_back(t);
  return out;
}

PrototypeTable compute_prototypes(
    const std::map<std::string, std::vector<TouchInstance>>& by_category,
    const FrameDescriber& describe) {
  PrototypeTable table;
  for (const auto& [category, instances] : by_category) {
    if (instances.empty()) {
      throw std::invalid_argument("category '" + category + "' has no instances");
    }
    std::vector<const TouchInstance*> ordered;
    for (const TouchInstance& t : instances) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](const TouchInstance* a, const TouchInstance* b) {
                return a->instance_id < b->instance_id;
              });

    std::vector<double> sums[3];
    const FramePosition positions[3] = {FramePosition::kStart,
                                        FramePosition::kMiddle,
                                        FramePosition::kEnd};
    for (const TouchInstance* t : ordered) {
      for (int p = 0; p < 3; ++p) {
        const TactileDescriptor d =
            describe(*t, select_frame(*t, positions[p]).offset);
        if (sums[p].empty()) sums[p].assign(d.size(), 0.0);
        if (d.size() != sums[p].size()) {
          throw std::invalid_argument("descriptor dimension changed within '" +
                                      category + "'");
        }
        for (std::size_t k = 0; k < d.size(); ++k) sums[p][k] += d.values[k];
      }
    }
    const double n = static_cast<double>(ordered.size());
    CategoryPrototypes cp;
    cp.instance_count = ordered.size();
    TactileDescriptor* outs[3] = {&cp.start, &cp.middle, &cp.end};
    for (int p = 0; p < 3; ++p) {
      outs[p]->source = DescriptorSource::kPrototype;
      outs[p]->values.resize(sums[p].size());
      for (std::size_t k = 0; k < sums[p].size(); ++k) {
        outs[p]->values[k] = sums[p][k] / n;
      }
    }
    cp.overall.source = DescriptorSource::kPrototype;
    cp.overall.values.resize(cp.start.size());
    for (std::size_t k = 0; k < cp.start.size(); ++k) {
      cp.overall.values[k] =
          (cp.start.values[k] + cp.middle.values[k] + cp.end.values[k]) / 3.0;
    }
    table.categories.emplace(category, std::move(cp));
  }
  return table;
}

}  // namespace tactloc

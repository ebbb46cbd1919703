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

#ifndef TACTLOC_PROTOTYPES_H_
#define TACTLOC_PROTOTYPES_H_

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tactloc/alignment.h"
#include "tactloc/touch_instance.h"

namespace tactloc {

struct CategoryPrototypes {
  TactileDescriptor start;
  TactileDescriptor middle;
  TactileDescriptor end;
  // (start + middle + end) / 3
  TactileDescriptor overall;
  std::size_t instance_count = 0;
};

struct PrototypeTable {
  std::map<std::string, CategoryPrototypes> categories;

  std::size_t category_count() const { return categories.size(); }
  // Throws std::out_of_range for an unknown category.
  const CategoryPrototypes& at(const std::string& category) const;
};

// Descriptor of one frame (instance, offset); typically encode + aggregate.
using FrameDescriber =
    std::function<TactileDescriptor(const TouchInstance&, std::size_t)>;

// Per category: P_start, P_middle, P_end are means over the category's
// instances of the start, floor(T/2) and end frame descriptors; the overall
// prototype is their mean. Instances are summed in instance_id order, so the
// table does not depend on input order. Throws std::invalid_argument for a
// category with no instances.
PrototypeTable compute_prototypes(
    const std::map<std::string, std::vector<TouchInstance>>& by_category,
    const FrameDescriber& describe);

std::map<std::string, std::vector<TouchInstance>> group_by_category(
    const std::vector<TouchInstance>& instances);

}  // namespace tactloc

#endif  // TACTLOC_PROTOTYPES_H_

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

#ifndef TACTLOC_CONCEPT_QUERIES_H_
#define TACTLOC_CONCEPT_QUERIES_H_

#include <span>
#include <string>
#include <vector>

namespace tactloc {

// Retrieval queries for one material category:
//   "<category> <object> in a <place>"   for every (object, place), then
//   "A close-up shot of <category> <object>"   for every object, or
//   "A close-up shot of <category>"   when there are no objects.
// Throws ValidationError for an empty category.
std::vector<std::string> emit_concept_query_templates(
    const std::string& category, std::span<const std::string> objects,
    std::span<const std::string> places);

}  // namespace tactloc

#endif  // TACTLOC_CONCEPT_QUERIES_H_

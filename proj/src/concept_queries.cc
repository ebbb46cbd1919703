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

#include "tactloc/concept_queries.h"

#include <algorithm>
#include <cctype>

#include "tactloc/errors.h"

namespace tactloc {
namespace {

std::string article_for(const std::string& word) {
  if (word.empty()) return "a";
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

}  // namespace

std::vector<std::string> emit_concept_query_templates(
    const std::string& category, std::span<const std::string> objects,
    std::span<const std::string> places) {
  if (category.empty()) throw ValidationError("query category is empty");
  std::vector<std::string> out;
  out.reserve(objects.size() * places.size() + std::max<std::size_t>(objects.size(), 1));
  for (const std::string& object : objects) {
    for (const std::string& place : places) {
      out.push_back(category + " " + object + " in " + article_for(place) + " " +
                    place);
    }
  }
  if (objects.empty()) {
    out.push_back("A close-up shot of " + category);
  } else {
    for (const std::string& object : objects) {
      out.push_back("A close-up shot of " + category + " " + object);
    }
  }
  return out;
}

}  // namespace tactloc

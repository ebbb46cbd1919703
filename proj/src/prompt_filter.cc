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

#include "tactloc/prompt_filter.h"

#include <cmath>
#include <stdexcept>

#include "tactloc/errors.h"
#include "tactloc/feature_file.h"
#include "tactloc/records.h"

namespace tactloc {
namespace {

double checked_norm(std::span<const double> v, const std::string& what) {
  double n2 = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(what + " has a non-finite value");
    }
    n2 += x * x;
  }
  const double n = std::sqrt(n2);
  if (n == 0.0) throw std::invalid_argument(what + " has zero norm");
  return n;
}

std::vector<double> load_vector(const std::filesystem::path& list_file,
                                const std::string& stored) {
  const FeatureMap m = load_feature_map(resolve_relative(list_file, stored));
  return m.tensor().values();
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("embedding dimension mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  const double na = checked_norm(a, "embedding");
  const double nb = checked_norm(b, "embedding");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot / (na * nb);
}

PromptFilterResult filter_by_prompt_argmax(
    std::span<const ImageEmbedding> images, const PromptSet& prompts) {
  if (prompts.negatives.empty()) {
    throw std::invalid_argument("prompt set for '" + prompts.category +
                                "' needs at least one negative prompt");
  }
  const std::size_t dim = prompts.positive.embedding.size();
  for (const Prompt& p : prompts.negatives) {
    if (p.embedding.size() != dim) {
      throw std::invalid_argument("prompt embeddings differ in dimension");
    }
  }
  PromptFilterResult out;
  for (const ImageEmbedding& img : images) {
    if (img.vector.size() != dim) {
      throw std::invalid_argument("image '" + img.id + "' has dimension " +
                                  std::to_string(img.vector.size()) +
                                  ", prompts have " + std::to_string(dim));
    }
    const double pos = cosine_similarity(img.vector, prompts.positive.embedding);
    std::size_t best = 0;
    double best_sim = -INFINITY;
    for (std::size_t k = 0; k < prompts.negatives.size(); ++k) {
      const double s = cosine_similarity(img.vector, prompts.negatives[k].embedding);
      if (s > best_sim) {
        best_sim = s;
        best = k;
      }
    }
    if (pos > best_sim) {
      out.retained.push_back(img.id);
    } else {
      out.rejected.push_back({img.id, prompts.negatives[best].text});
    }
  }
  return out;
}

PromptSet read_prompt_set(const std::filesystem::path& path) {
  const KeyValueFile file = read_key_value_file(path);
  PromptSet set;
  if (auto it = file.directives.find("category"); it != file.directives.end()) {
    set.category = it->second;
  }
  bool have_positive = false;
  for (const KeyValueRecord& r : file.records) {
    Prompt p{r.get("text"), load_vector(path, r.get("embedding"))};
    const std::string& role = r.get("role");
    if (role == "positive") {
      if (have_positive) {
        throw FormatError("line " + std::to_string(r.line) +
                          ": second positive prompt");
      }
      set.positive = std::move(p);
      have_positive = true;
    } else if (role == "negative") {
      set.negatives.push_back(std::move(p));
    } else {
      throw FormatError("line " + std::to_string(r.line) + ": unknown role '" +
                        role + "'");
    }
  }
  if (!have_positive) throw FormatError("prompt set has no positive prompt");
  if (set.negatives.empty()) {
    throw FormatError("prompt set has no negative prompt");
  }
  return set;
}

std::vector<ImageEmbedding> read_embedding_list(
    const std::filesystem::path& path) {
  const KeyValueFile file = read_key_value_file(path);
  std::vector<ImageEmbedding> out;
  for (const KeyValueRecord& r : file.records) {
    out.push_back({r.get("id"), load_vector(path, r.get("embedding"))});
  }
  return out;
}

}  // namespace tactloc

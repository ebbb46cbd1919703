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

#ifndef TACTLOC_PROMPT_FILTER_H_
#define TACTLOC_PROMPT_FILTER_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tactloc {

struct Prompt {
  std::string text;
  std::vector<double> embedding;
};

// One positive prompt for a category and the prompts it is most easily
// confused with.
struct PromptSet {
  std::string category;
  Prompt positive;
  std::vector<Prompt> negatives;
};

struct ImageEmbedding {
  std::string id;
  std::vector<double> vector;
};

struct PromptRejection {
  std::string id;
  // Text of the best-scoring negative prompt.
  std::string winning_prompt;

  bool operator==(const PromptRejection&) const = default;
};

struct PromptFilterResult {
  std::vector<std::string> retained;
  std::vector<PromptRejection> rejected;
};

double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Keeps an image iff the positive prompt's cosine similarity is strictly
// greater than every negative's; ties reject. Throws std::invalid_argument on
// dimension mismatch, zero-norm embeddings, non-finite values or an empty
// negative list.
PromptFilterResult filter_by_prompt_argmax(
    std::span<const ImageEmbedding> images, const PromptSet& prompts);

// File forms. A prompt-set file holds key=value records
//   role=positive|negative  text=...  embedding=<VTFT path>
// with an optional `#category=` directive; an embedding list holds
//   id=...  embedding=<VTFT path>
// Embeddings are C x 1 x 1 VTFT maps; paths resolve against the list file.
PromptSet read_prompt_set(const std::filesystem::path& path);
std::vector<ImageEmbedding> read_embedding_list(
    const std::filesystem::path& path);

}  // namespace tactloc

#endif  // TACTLOC_PROMPT_FILTER_H_

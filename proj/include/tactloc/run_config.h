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

#ifndef TACTLOC_RUN_CONFIG_H_
#define TACTLOC_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tactloc/adamw.h"
#include "tactloc/alignment.h"
#include "tactloc/encoder.h"
#include "tactloc/evaluate.h"
#include "tactloc/pairing.h"

namespace tactloc {

enum class ValueType { kInt, kReal, kBool, kText };

struct ConfigKey {
  std::string name;
  ValueType type = ValueType::kText;
  std::string default_value;
  std::string help;
};

// Every recognized key with its default, in display order.
const std::vector<ConfigKey>& config_keys();

// Flat key/value run configuration. Layers are applied in increasing
// precedence: defaults, config file, STT_SEED, command-line flags. A named
// preset fills keys that no layer set explicitly.
class RunConfig {
 public:
  RunConfig();

  // Throws ValidationError for an unknown key or a value that does not parse
  // as the key's type.
  void set(std::string_view key, std::string value);
  bool explicitly_set(std::string_view key) const;
  const std::string& text(std::string_view key) const;

  std::uint64_t integer(std::string_view key) const;
  double real(std::string_view key) const;
  bool flag(std::string_view key) const;
  std::filesystem::path path(std::string_view key) const;

  // `key = value` lines, `#` comments.
  void merge_file(const std::filesystem::path& path);
  void merge_text(std::string_view text, std::string_view origin);
  // Applies STT_SEED if it is set in the environment.
  void merge_environment();
  // Fills preset values for keys not explicitly set. Throws ValidationError
  // for an unknown preset name.
  void apply_preset();

  std::uint64_t seed() const { return integer("seed"); }

  EncoderConfig encoder_config() const;
  LossConfig loss_config() const;
  CurriculumSchedule schedule() const;
  PairingOptions pairing_options() const;
  AdamWOptions adamw_options() const;
  EvalConfig eval_config() const;
  std::size_t batch_size() const;

  // The corpus directory: `corpus`, or <out>/corpus when empty.
  std::filesystem::path corpus_dir() const;
  std::filesystem::path manifest_path() const;
  std::filesystem::path eval_list_path() const;
  std::filesystem::path interactive_list_path() const;

  // Sorted `key = value` lines of every key; the echo stored in artifacts.
  std::string echo() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::set<std::string, std::less<>> explicit_;
};

// Trims spaces and tabs from both ends.
std::string trim(std::string_view text);

}  // namespace tactloc

#endif  // TACTLOC_RUN_CONFIG_H_

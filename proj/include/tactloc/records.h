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

#ifndef TACTLOC_RECORDS_H_
#define TACTLOC_RECORDS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tactloc {

// One line of a line-delimited `key=value` file. Fields are tab-separated.
struct KeyValueRecord {
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> fields;

  bool has(std::string_view key) const;
  // Throws FormatError naming the line when the key is absent.
  const std::string& get(std::string_view key) const;
  std::string get_or(std::string_view key, std::string fallback) const;
};

struct KeyValueFile {
  std::vector<KeyValueRecord> records;
  // `#name=value` lines, e.g. `#categories=brick,grass`.
  std::map<std::string, std::string> directives;
};

// Blank lines and `#` comments are skipped. Throws FormatError (with the line
// number) for fields without '=', empty keys or repeated keys.
KeyValueFile parse_key_value_text(std::string_view text);
KeyValueFile read_key_value_file(const std::filesystem::path& path);

std::string format_key_value_line(
    const std::vector<std::pair<std::string, std::string>>& fields);

// Splits on `sep`, dropping empty pieces.
std::vector<std::string> split_list(std::string_view text, char sep);

// Resolves a path stored in a file relative to the file's directory.
std::filesystem::path resolve_relative(const std::filesystem::path& base_file,
                                       const std::string& stored);

}  // namespace tactloc

#endif  // TACTLOC_RECORDS_H_

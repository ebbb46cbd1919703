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

#include "tactloc/records.h"

#include <algorithm>

#include "tactloc/errors.h"
#include "tactloc/raster.h"

namespace tactloc {

bool KeyValueRecord::has(std::string_view key) const {
  return std::any_of(fields.begin(), fields.end(),
                     [&](const auto& f) { return f.first == key; });
}

const std::string& KeyValueRecord::get(std::string_view key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  throw FormatError("line " + std::to_string(line) + ": missing field '" +
                    std::string(key) + "'");
}

std::string KeyValueRecord::get_or(std::string_view key,
                                   std::string fallback) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return fallback;
}

KeyValueFile parse_key_value_text(std::string_view text) {
  KeyValueFile out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      const std::size_t eq = line.find('=');
      if (eq != std::string_view::npos && eq > 1 &&
          line.substr(1, eq - 1).find(' ') == std::string_view::npos) {
        out.directives[std::string(line.substr(1, eq - 1))] =
            std::string(line.substr(eq + 1));
      }
      if (end == text.size()) break;
      continue;
    }
    KeyValueRecord rec;
    rec.line = line_no;
    std::size_t fpos = 0;
    while (fpos <= line.size()) {
      std::size_t tab = line.find('\t', fpos);
      if (tab == std::string_view::npos) tab = line.size();
      std::string_view field = line.substr(fpos, tab - fpos);
      fpos = tab + 1;
      if (field.empty()) {
        if (tab == line.size()) break;
        continue;
      }
      const std::size_t eq = field.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": malformed field '" + std::string(field) +
                          "' (expected key=value)");
      }
      std::string key(field.substr(0, eq));
      if (rec.has(key)) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": repeated key '" + key + "'");
      }
      rec.fields.emplace_back(std::move(key), std::string(field.substr(eq + 1)));
      if (tab == line.size()) break;
    }
    out.records.push_back(std::move(rec));
    if (end == text.size()) break;
  }
  return out;
}

KeyValueFile read_key_value_file(const std::filesystem::path& path) {
  return parse_key_value_text(read_file_bytes(path));
}

std::string format_key_value_line(
    const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += '\t';
    out += fields[i].first;
    out += '=';
    out += fields[i].second;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(pos, end - pos);
    const auto first = piece.find_first_not_of(' ');
    if (first != std::string_view::npos) {
      const auto last = piece.find_last_not_of(' ');
      out.emplace_back(piece.substr(first, last - first + 1));
    }
    pos = end + 1;
  }
  return out;
}

std::filesystem::path resolve_relative(const std::filesystem::path& base_file,
                                       const std::string& stored) {
  std::filesystem::path p(stored);
  if (p.is_absolute()) return p;
  return base_file.parent_path() / p;
}

}  // namespace tactloc

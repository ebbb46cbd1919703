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

#ifndef TACTLOC_REPORT_H_
#define TACTLOC_REPORT_H_

#include <filesystem>
#include <map>
#include <string>

#include "tactloc/evaluate.h"

namespace tactloc {

// key=value lines: one summary record, then one record per category.
std::string format_report(const EvalReport& report);
// Fixed-width table for terminals.
std::string format_report_table(const EvalReport& report);

std::string format_robustness(const std::map<FramePosition, EvalReport>& reports);
std::string format_robustness_table(
    const std::map<FramePosition, EvalReport>& reports);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tactloc

#endif  // TACTLOC_REPORT_H_

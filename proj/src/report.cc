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

#include "tactloc/report.h"

#include <cstdio>

#include "tactloc/raster.h"
#include "tactloc/records.h"

namespace tactloc {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string summary_line(const EvalReport& r, const std::string& record) {
  std::vector<std::pair<std::string, std::string>> fields = {
      {"record", record},
      {"label", r.label},
      {"seed", std::to_string(r.seed)},
      {"samples", std::to_string(r.sample_count)},
      {"mAP", exact(r.map)},
      {"mIoU", exact(r.miou)}};
  if (r.iiou) fields.emplace_back("IIoU", exact(*r.iiou));
  fields.emplace_back("threshold", exact(r.config.threshold));
  fields.emplace_back("ap_flavor", std::string(to_string(r.config.ap_flavor)));
  fields.emplace_back("upsampling", r.config.upsampling);
  fields.emplace_back("frame_position",
                      r.config.use_prototype
                          ? std::string("prototype")
                          : std::string(to_string(r.config.frame_position)));
  return format_key_value_line(fields) + "\n";
}

}  // namespace

std::string format_report(const EvalReport& report) {
  std::string out = summary_line(report, "summary");
  for (const auto& [cat, m] : report.categories) {
    out += format_key_value_line({{"record", "category"},
                                  {"category", cat},
                                  {"samples", std::to_string(m.samples)},
                                  {"mAP", exact(m.map)},
                                  {"mIoU", exact(m.miou)}});
    out += '\n';
  }
  return out;
}

std::string format_report_table(const EvalReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %8s %8s %8s\n", "category", "samples",
                "mAP", "mIoU");
  out += buf;
  for (const auto& [cat, m] : report.categories) {
    std::snprintf(buf, sizeof buf, "%-20s %8zu %8s %8s\n", cat.c_str(),
                  m.samples, fixed(m.map, 2).c_str(), fixed(m.miou, 2).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-20s %8zu %8s %8s\n", "overall",
                report.sample_count, fixed(report.map, 2).c_str(),
                fixed(report.miou, 2).c_str());
  out += buf;
  if (report.iiou) out += "IIoU " + fixed(*report.iiou, 2) + "\n";
  return out;
}

std::string format_robustness(const std::map<FramePosition, EvalReport>& reports) {
  std::string out;
  for (const auto& [pos, r] : reports) {
    out += summary_line(r, std::string(to_string(pos)));
  }
  return out;
}

std::string format_robustness_table(
    const std::map<FramePosition, EvalReport>& reports) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %8s %8s\n", "frame", "mAP", "mIoU");
  out += buf;
  for (const auto& [pos, r] : reports) {
    std::snprintf(buf, sizeof buf, "%-8s %8s %8s\n",
                  std::string(to_string(pos)).c_str(), fixed(r.map, 2).c_str(),
                  fixed(r.miou, 2).c_str());
    out += buf;
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file_bytes(path, text);
}

}  // namespace tactloc

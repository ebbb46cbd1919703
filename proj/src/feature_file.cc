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

#include "tactloc/feature_file.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tactloc/errors.h"
#include "tactloc/raster.h"

namespace tactloc {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& b, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_feature_map(const FeatureMap& map) {
  const std::size_t c = map.channels(), h = map.height(), w = map.width();
  if (c > UINT32_MAX || h > UINT32_MAX || w > UINT32_MAX) {
    throw std::invalid_argument("feature map too large for VTFT");
  }
  std::string out = "VTFT";
  out.push_back(static_cast<char>(kVtftVersion & 0xFF));
  out.push_back(static_cast<char>(kVtftVersion >> 8));
  out.push_back('\0');  // dtype float32
  out.push_back('\0');  // reserved
  put_u32(out, static_cast<std::uint32_t>(c));
  put_u32(out, static_cast<std::uint32_t>(h));
  put_u32(out, static_cast<std::uint32_t>(w));
  out.reserve(kVtftHeaderSize + 4 * map.tensor().size());
  for (double v : map.tensor().data()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) {
      throw std::invalid_argument("feature value overflows float32");
    }
    put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

FeatureMap decode_feature_map(const std::string& b) {
  if (b.size() < kVtftHeaderSize) throw FormatError("VTFT: truncated header");
  if (b.compare(0, 4, "VTFT") != 0) throw FormatError("VTFT: bad magic");
  const std::uint16_t version = static_cast<std::uint16_t>(
      static_cast<unsigned char>(b[4]) | (static_cast<unsigned char>(b[5]) << 8));
  if (version != kVtftVersion) {
    throw FormatError("VTFT: unsupported version " + std::to_string(version));
  }
  if (b[6] != 0) {
    throw FormatError("VTFT: unsupported dtype " +
                      std::to_string(static_cast<unsigned char>(b[6])));
  }
  const std::uint64_t c = get_u32(b, 8), h = get_u32(b, 12), w = get_u32(b, 16);
  if (c == 0 || h == 0 || w == 0) throw FormatError("VTFT: zero dimension");
  const std::uint64_t count = c * h * w;
  if (b.size() - kVtftHeaderSize != 4 * count) {
    throw FormatError("VTFT: payload is " +
                      std::to_string(b.size() - kVtftHeaderSize) +
                      " bytes, header implies " + std::to_string(4 * count));
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float f = std::bit_cast<float>(get_u32(b, kVtftHeaderSize + 4 * i));
    if (!std::isfinite(f)) throw FormatError("VTFT: non-finite value");
    data[i] = static_cast<double>(f);
  }
  return FeatureMap(c, h, w, std::move(data));
}

void save_feature_map(const FeatureMap& map,
                      const std::filesystem::path& path) {
  write_file_bytes(path, encode_feature_map(map));
}

FeatureMap load_feature_map(const std::filesystem::path& path) {
  return decode_feature_map(read_file_bytes(path));
}

}  // namespace tactloc

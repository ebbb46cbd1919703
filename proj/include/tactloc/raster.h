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

#ifndef TACTLOC_RASTER_H_
#define TACTLOC_RASTER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tactloc {

// 8-bit image, row-major, channel-interleaved. One (gray) or three (RGB)
// channels.
class Raster {
 public:
  Raster() = default;
  // Throws std::invalid_argument on zero extents, channels not in {1, 3} or a
  // sample count that does not match.
  Raster(std::size_t width, std::size_t height, std::size_t channels,
         std::vector<std::uint8_t> samples);
  static Raster filled(std::size_t width, std::size_t height,
                       std::size_t channels, std::uint8_t value);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t channels() const { return channels_; }
  const std::vector<std::uint8_t>& samples() const { return samples_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return samples_[(y * width_ + x) * channels_ + c];
  }
  void set(std::size_t x, std::size_t y, std::size_t c, std::uint8_t v) {
    samples_[(y * width_ + x) * channels_ + c] = v;
  }

  bool operator==(const Raster&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 1;
  std::vector<std::uint8_t> samples_;
};

struct NetpbmHeader {
  std::string magic;  // "P5" or "P6"
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t maxval = 0;
  std::size_t payload_offset = 0;
};

// Parses the header of a binary PGM (P5) or PPM (P6) byte string. Throws
// FormatError for anything else.
NetpbmHeader parse_netpbm_header(const std::string& bytes);

// Binary PGM/PPM with maxval 255.
Raster read_netpbm(const std::filesystem::path& path);
Raster decode_netpbm(const std::string& bytes);
std::string encode_netpbm(const Raster& raster);
void write_netpbm(const Raster& raster, const std::filesystem::path& path);

// Whole-file helpers shared by the binary formats.
std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      const std::string& bytes);

}  // namespace tactloc

#endif  // TACTLOC_RASTER_H_

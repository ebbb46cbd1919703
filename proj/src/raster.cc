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

#include "tactloc/raster.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tactloc/errors.h"

namespace tactloc {
namespace {

void skip_space_and_comments(const std::string& b, std::size_t& pos) {
  while (pos < b.size()) {
    if (std::isspace(static_cast<unsigned char>(b[pos]))) {
      ++pos;
    } else if (b[pos] == '#') {
      while (pos < b.size() && b[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

std::size_t read_header_int(const std::string& b, std::size_t& pos,
                            const char* what) {
  skip_space_and_comments(b, pos);
  std::size_t start = pos;
  std::size_t value = 0;
  while (pos < b.size() && std::isdigit(static_cast<unsigned char>(b[pos]))) {
    value = value * 10 + static_cast<std::size_t>(b[pos] - '0');
    if (value > (1u << 24)) throw FormatError(std::string("netpbm: ") + what + " too large");
    ++pos;
  }
  if (pos == start) throw FormatError(std::string("netpbm: missing ") + what);
  return value;
}

}  // namespace

Raster::Raster(std::size_t width, std::size_t height, std::size_t channels,
               std::vector<std::uint8_t> samples)
    : width_(width), height_(height), channels_(channels),
      samples_(std::move(samples)) {
  if (width_ == 0 || height_ == 0) {
    throw std::invalid_argument("raster extents must be positive");
  }
  if (channels_ != 1 && channels_ != 3) {
    throw std::invalid_argument("raster must have 1 or 3 channels");
  }
  if (samples_.size() != width_ * height_ * channels_) {
    throw std::invalid_argument("raster sample count mismatch");
  }
}

Raster Raster::filled(std::size_t width, std::size_t height,
                      std::size_t channels, std::uint8_t value) {
  return Raster(width, height, channels,
                std::vector<std::uint8_t>(width * height * channels, value));
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file_bytes(const std::filesystem::path& path,
                      const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

NetpbmHeader parse_netpbm_header(const std::string& b) {
  if (b.size() < 2 || b[0] != 'P' || (b[1] != '5' && b[1] != '6')) {
    throw FormatError("netpbm: expected binary PGM (P5) or PPM (P6)");
  }
  NetpbmHeader h;
  h.magic = b.substr(0, 2);
  std::size_t pos = 2;
  h.width = read_header_int(b, pos, "width");
  h.height = read_header_int(b, pos, "height");
  h.maxval = read_header_int(b, pos, "maxval");
  if (pos >= b.size() || !std::isspace(static_cast<unsigned char>(b[pos]))) {
    throw FormatError("netpbm: header must end with a single whitespace");
  }
  h.payload_offset = pos + 1;
  if (h.width == 0 || h.height == 0) {
    throw FormatError("netpbm: zero image extent");
  }
  return h;
}

Raster decode_netpbm(const std::string& bytes) {
  const NetpbmHeader h = parse_netpbm_header(bytes);
  if (h.maxval != 255) throw FormatError("netpbm: maxval must be 255");
  const std::size_t channels = h.magic == "P5" ? 1 : 3;
  const std::size_t expected = h.width * h.height * channels;
  if (bytes.size() - h.payload_offset < expected) {
    throw FormatError("netpbm: truncated payload");
  }
  std::vector<std::uint8_t> samples(
      bytes.begin() + static_cast<std::ptrdiff_t>(h.payload_offset),
      bytes.begin() + static_cast<std::ptrdiff_t>(h.payload_offset + expected));
  return Raster(h.width, h.height, channels, std::move(samples));
}

Raster read_netpbm(const std::filesystem::path& path) {
  return decode_netpbm(read_file_bytes(path));
}

std::string encode_netpbm(const Raster& raster) {
  std::string out = (raster.channels() == 1 ? "P5\n" : "P6\n") +
                    std::to_string(raster.width()) + " " +
                    std::to_string(raster.height()) + "\n255\n";
  out.append(raster.samples().begin(), raster.samples().end());
  return out;
}

void write_netpbm(const Raster& raster, const std::filesystem::path& path) {
  write_file_bytes(path, encode_netpbm(raster));
}

}  // namespace tactloc

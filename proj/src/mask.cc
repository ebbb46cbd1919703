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

#include "tactloc/mask.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tactloc/errors.h"
#include "tactloc/raster.h"

namespace tactloc {

MaskImage::MaskImage(std::size_t width, std::size_t height)
    : MaskImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

MaskImage::MaskImage(std::size_t width, std::size_t height,
                     std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width_ == 0 || height_ == 0) {
    throw std::invalid_argument("mask extents must be positive");
  }
  if (bits_.size() != width_ * height_) {
    throw std::invalid_argument("mask bit count mismatch");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t MaskImage::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

MaskImage decode_mask(const std::string& bytes) {
  const NetpbmHeader h = parse_netpbm_header(bytes);
  if (h.magic != "P5") throw FormatError("mask must be a binary PGM (P5)");
  if (h.maxval != 255) throw FormatError("mask maxval must be 255");
  if (bytes.size() - h.payload_offset < h.width * h.height) {
    throw FormatError("mask payload truncated");
  }
  std::vector<std::uint8_t> bits(h.width * h.height);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = bytes[h.payload_offset + i] != 0 ? 1 : 0;
  }
  return MaskImage(h.width, h.height, std::move(bits));
}

MaskImage load_mask(const std::filesystem::path& path) {
  return decode_mask(read_file_bytes(path));
}

std::string encode_mask(const MaskImage& mask) {
  std::vector<std::uint8_t> samples(mask.pixel_count());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = mask[i] ? 255 : 0;
  return encode_netpbm(Raster(mask.width(), mask.height(), 1, std::move(samples)));
}

void save_mask(const MaskImage& mask, const std::filesystem::path& path) {
  write_file_bytes(path, encode_mask(mask));
}

}  // namespace tactloc

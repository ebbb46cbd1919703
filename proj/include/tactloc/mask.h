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

#ifndef TACTLOC_MASK_H_
#define TACTLOC_MASK_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace tactloc {

// Binary region membership per pixel, row-major.
class MaskImage {
 public:
  MaskImage() = default;
  MaskImage(std::size_t width, std::size_t height);
  // `bits` holds one 0/1 entry per pixel.
  MaskImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pixel_count() const { return bits_.size(); }
  bool at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t x, std::size_t y, bool inside) {
    bits_[y * width_ + x] = inside ? 1 : 0;
  }
  // Number of pixels inside the region.
  std::size_t count() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const MaskImage&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Binary PGM (P5), maxval 255; nonzero means inside. Throws FormatError when
// the file is not P5, maxval != 255, or the payload is truncated.
MaskImage load_mask(const std::filesystem::path& path);
MaskImage decode_mask(const std::string& bytes);
// Inside pixels are written as 255, outside as 0.
void save_mask(const MaskImage& mask, const std::filesystem::path& path);
std::string encode_mask(const MaskImage& mask);

}  // namespace tactloc

#endif  // TACTLOC_MASK_H_

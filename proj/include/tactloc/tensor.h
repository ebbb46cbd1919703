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

#ifndef TACTLOC_TENSOR_H_
#define TACTLOC_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tactloc {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

// Dense row-major array of finite doubles. Values are fixed at construction;
// "modifying" a tensor means building a new one.
class Tensor {
 public:
  // Rank-0 zero.
  Tensor();
  // Throws std::invalid_argument if data.size() != product(shape) or any
  // value is NaN/Inf.
  Tensor(Shape shape, std::vector<double> data);

  static Tensor scalar(double value);
  static Tensor zeros(Shape shape);
  static Tensor filled(Shape shape, double value);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  std::span<const double> data() const { return data_; }
  const std::vector<double>& values() const { return data_; }
  double operator[](std::size_t i) const { return data_[i]; }

  // Value of a rank-0 or single-element tensor.
  double item() const;

  // Rank-3 [c][h][w] accessor.
  double at(std::size_t c, std::size_t h, std::size_t w) const {
    return data_[(c * shape_[1] + h) * shape_[2] + w];
  }

  Tensor reshaped(Shape shape) const;

  bool operator==(const Tensor& other) const = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

// A C x H x W grid of per-location embedding vectors.
class FeatureMap {
 public:
  FeatureMap() = default;
  // Throws std::invalid_argument unless `tensor` has rank 3 with non-zero
  // extents.
  explicit FeatureMap(Tensor tensor);
  FeatureMap(std::size_t channels, std::size_t height, std::size_t width,
             std::vector<double> data);

  std::size_t channels() const { return tensor_.dim(0); }
  std::size_t height() const { return tensor_.dim(1); }
  std::size_t width() const { return tensor_.dim(2); }
  double at(std::size_t c, std::size_t h, std::size_t w) const {
    return tensor_.at(c, h, w);
  }
  // The C-vector at location (h, w).
  std::vector<double> vector_at(std::size_t h, std::size_t w) const;

  const Tensor& tensor() const { return tensor_; }
  bool operator==(const FeatureMap& other) const = default;

 private:
  Tensor tensor_ = Tensor(Shape{1, 1, 1}, {0.0});
};

}  // namespace tactloc

#endif  // TACTLOC_TENSOR_H_

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

#include "tactloc/tensor.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tactloc {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) out << "x";
    out << shape[i];
  }
  out << "]";
  return out.str();
}

Tensor::Tensor() : shape_{}, data_{0.0} {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_size(shape_) != data_.size()) {
    throw std::invalid_argument("tensor shape " + shape_string(shape_) +
                                " does not match " +
                                std::to_string(data_.size()) + " values");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw std::invalid_argument("non-finite tensor value at index " +
                                  std::to_string(i));
    }
  }
}

Tensor Tensor::scalar(double value) { return Tensor(Shape{}, {value}); }

Tensor Tensor::zeros(Shape shape) { return filled(std::move(shape), 0.0); }

Tensor Tensor::filled(Shape shape, double value) {
  std::size_t n = shape_size(shape);
  return Tensor(std::move(shape), std::vector<double>(n, value));
}

double Tensor::item() const {
  if (data_.size() != 1) {
    throw std::invalid_argument("item() on tensor of shape " +
                                shape_string(shape_));
  }
  return data_[0];
}

Tensor Tensor::reshaped(Shape shape) const {
  if (shape_size(shape) != data_.size()) {
    throw std::invalid_argument("cannot reshape " + shape_string(shape_) +
                                " to " + shape_string(shape));
  }
  return Tensor(std::move(shape), data_);
}

FeatureMap::FeatureMap(Tensor tensor) : tensor_(std::move(tensor)) {
  if (tensor_.rank() != 3 || tensor_.size() == 0) {
    throw std::invalid_argument("feature map needs a non-empty CxHxW tensor, got " +
                                shape_string(tensor_.shape()));
  }
}

FeatureMap::FeatureMap(std::size_t channels, std::size_t height,
                       std::size_t width, std::vector<double> data)
    : FeatureMap(Tensor(Shape{channels, height, width}, std::move(data))) {}

std::vector<double> FeatureMap::vector_at(std::size_t h, std::size_t w) const {
  std::vector<double> out(channels());
  for (std::size_t c = 0; c < channels(); ++c) out[c] = at(c, h, w);
  return out;
}

}  // namespace tactloc

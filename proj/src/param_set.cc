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

#include "tactloc/param_set.h"

#include <stdexcept>
#include <utility>

namespace tactloc {

void ParamSet::add(const std::string& name, Tensor value, bool trainable) {
  if (entries_.contains(name)) {
    throw std::invalid_argument("duplicate parameter '" + name + "'");
  }
  Entry e;
  e.state.first_moment = Tensor::zeros(value.shape());
  e.state.second_moment = Tensor::zeros(value.shape());
  e.value = std::move(value);
  e.trainable = trainable;
  entries_.emplace(name, std::move(e));
}

bool ParamSet::contains(const std::string& name) const {
  return entries_.contains(name);
}

const ParamSet::Entry& ParamSet::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::out_of_range("unknown parameter '" + name + "'");
  }
  return it->second;
}

ParamSet::Entry& ParamSet::entry(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::out_of_range("unknown parameter '" + name + "'");
  }
  return it->second;
}

const Tensor& ParamSet::get(const std::string& name) const {
  return entry(name).value;
}

void ParamSet::set(const std::string& name, Tensor value) {
  Entry& e = entry(name);
  if (value.shape() != e.value.shape()) {
    throw std::invalid_argument("shape change for parameter '" + name + "': " +
                                shape_string(e.value.shape()) + " -> " +
                                shape_string(value.shape()));
  }
  e.value = std::move(value);
}

bool ParamSet::trainable(const std::string& name) const {
  return entry(name).trainable;
}

void ParamSet::set_trainable(const std::string& name, bool trainable) {
  entry(name).trainable = trainable;
}

const OptimizerState& ParamSet::state(const std::string& name) const {
  return entry(name).state;
}

void ParamSet::set_state(const std::string& name, OptimizerState state) {
  Entry& e = entry(name);
  if (state.first_moment.shape() != e.value.shape() ||
      state.second_moment.shape() != e.value.shape()) {
    throw std::invalid_argument("optimizer state shape mismatch for '" + name +
                                "'");
  }
  e.state = std::move(state);
}

std::vector<std::string> ParamSet::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

std::vector<std::string> ParamSet::trainable_names() const {
  std::vector<std::string> out;
  for (const auto& [name, e] : entries_) {
    if (e.trainable) out.push_back(name);
  }
  return out;
}

}  // namespace tactloc

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

#ifndef TACTLOC_PARAM_SET_H_
#define TACTLOC_PARAM_SET_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tactloc/tensor.h"

namespace tactloc {

// AdamW moments for one parameter tensor.
struct OptimizerState {
  Tensor first_moment;
  Tensor second_moment;
  std::uint64_t step = 0;

  bool operator==(const OptimizerState&) const = default;
};

// Named parameters with trainable flags and per-parameter optimizer state.
// Names iterate in lexicographic order, which fixes every reduction order
// that walks the set.
class ParamSet {
 public:
  // Adds a parameter with zeroed optimizer state. Throws on duplicate name.
  void add(const std::string& name, Tensor value, bool trainable);

  bool contains(const std::string& name) const;
  const Tensor& get(const std::string& name) const;
  // Replaces the value; the shape must not change.
  void set(const std::string& name, Tensor value);

  bool trainable(const std::string& name) const;
  void set_trainable(const std::string& name, bool trainable);

  const OptimizerState& state(const std::string& name) const;
  void set_state(const std::string& name, OptimizerState state);

  std::vector<std::string> names() const;
  std::vector<std::string> trainable_names() const;
  std::size_t size() const { return entries_.size(); }

  bool operator==(const ParamSet&) const = default;

 private:
  struct Entry {
    Tensor value;
    bool trainable = false;
    OptimizerState state;
    bool operator==(const Entry&) const = default;
  };
  const Entry& entry(const std::string& name) const;
  Entry& entry(const std::string& name);

  std::map<std::string, Entry> entries_;
};

}  // namespace tactloc

#endif  // TACTLOC_PARAM_SET_H_

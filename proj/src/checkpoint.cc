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

#include "tactloc/checkpoint.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <optional>

#include "tactloc/errors.h"
#include "tactloc/raster.h"

namespace tactloc {
namespace {

constexpr char kMagic[4] = {'T', 'L', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_unsigned_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
  }
  void put_double(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void put_bytes(const std::string& s) { out_ += s; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}
  template <typename T>
  T get() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return v;
  }
  double get_double() { return std::bit_cast<double>(get<std::uint64_t>()); }
  std::string get_bytes(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw FormatError("checkpoint is truncated");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

void put_values(Writer& w, const Tensor& t) {
  for (double v : t.data()) w.put_double(v);
}

Tensor get_values(Reader& r, const Shape& shape) {
  std::vector<double> data(shape_size(shape));
  for (double& v : data) v = r.get_double();
  try {
    return Tensor(shape, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("checkpoint tensor: ") + e.what());
  }
}

}  // namespace

std::string encode_checkpoint(const Checkpoint& c) {
  Writer w;
  w.put_bytes(std::string(kMagic, 4));
  w.put(kVersion);
  w.put(c.epoch);
  w.put(c.global_step);
  w.put(c.seed);
  w.put(static_cast<std::uint64_t>(c.config_echo.size()));
  w.put_bytes(c.config_echo);
  const auto names = c.params.names();
  w.put(static_cast<std::uint64_t>(names.size()));
  for (const std::string& name : names) {
    const Tensor& value = c.params.get(name);
    const OptimizerState& st = c.params.state(name);
    w.put(static_cast<std::uint32_t>(name.size()));
    w.put_bytes(name);
    w.put(static_cast<std::uint8_t>(c.params.trainable(name) ? 1 : 0));
    w.put(static_cast<std::uint32_t>(value.rank()));
    for (std::size_t d : value.shape()) w.put(static_cast<std::uint64_t>(d));
    put_values(w, value);
    put_values(w, st.first_moment);
    put_values(w, st.second_moment);
    w.put(st.step);
  }
  return w.take();
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  Reader r(bytes);
  if (r.get_bytes(4) != std::string(kMagic, 4)) throw FormatError("checkpoint: bad magic");
  if (const auto v = r.get<std::uint32_t>(); v != kVersion) {
    throw FormatError("checkpoint: unsupported version " + std::to_string(v));
  }
  Checkpoint c;
  c.epoch = r.get<std::uint64_t>();
  c.global_step = r.get<std::uint64_t>();
  c.seed = r.get<std::uint64_t>();
  c.config_echo = r.get_bytes(r.get<std::uint64_t>());
  const auto count = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string name = r.get_bytes(r.get<std::uint32_t>());
    const bool trainable = r.get<std::uint8_t>() != 0;
    const auto rank = r.get<std::uint32_t>();
    if (rank > 8) throw FormatError("checkpoint: implausible rank for '" + name + "'");
    Shape shape(rank);
    for (std::size_t& d : shape) {
      d = r.get<std::uint64_t>();
      if (d > (std::uint64_t{1} << 32)) throw FormatError("checkpoint: implausible shape");
    }
    Tensor value = get_values(r, shape);
    OptimizerState st;
    st.first_moment = get_values(r, shape);
    st.second_moment = get_values(r, shape);
    st.step = r.get<std::uint64_t>();
    if (c.params.contains(name)) throw FormatError("checkpoint: duplicate '" + name + "'");
    c.params.add(name, std::move(value), trainable);
    c.params.set_state(name, std::move(st));
  }
  if (!r.done()) throw FormatError("checkpoint: trailing bytes");
  return c;
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  write_file_bytes(path, encode_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(read_file_bytes(path));
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir,
                                      std::uint64_t epoch) {
  return dir / ("ckpt-" + std::to_string(epoch) + ".bin");
}

std::filesystem::path latest_checkpoint(const std::filesystem::path& dir) {
  std::optional<std::uint64_t> best;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (!name.starts_with("ckpt-") || !name.ends_with(".bin")) continue;
    const std::string digits = name.substr(5, name.size() - 9);
    std::uint64_t n = 0;
    auto [ptr, err] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (err != std::errc() || ptr != digits.data() + digits.size()) continue;
    if (!best || n > *best) best = n;
  }
  if (!best) throw ValidationError("no checkpoint found in '" + dir.string() + "'");
  return checkpoint_path(dir, *best);
}

}  // namespace tactloc

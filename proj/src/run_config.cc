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

#include "tactloc/run_config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "tactloc/errors.h"
#include "tactloc/raster.h"

namespace tactloc {
namespace {

const ConfigKey* find_key(std::string_view name) {
  for (const ConfigKey& k : config_keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_real(std::string_view text, double& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_bool(std::string_view text, bool& out) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    out = false;
    return true;
  }
  return false;
}

void check_value(const ConfigKey& key, const std::string& value) {
  bool ok = true;
  switch (key.type) {
    case ValueType::kInt: {
      std::uint64_t v = 0;
      ok = parse_u64(value, v);
      break;
    }
    case ValueType::kReal: {
      double v = 0;
      ok = parse_real(value, v);
      break;
    }
    case ValueType::kBool: {
      bool v = false;
      ok = parse_bool(value, v);
      break;
    }
    case ValueType::kText:
      break;
  }
  if (!ok) {
    throw ValidationError("invalid value '" + value + "' for key '" + key.name + "'");
  }
}

const std::map<std::string, std::map<std::string, std::string>>& presets() {
  static const std::map<std::string, std::map<std::string, std::string>> table = {
      {"desk", {}},
      {"paper",
       {{"lr", "1e-5"},
        {"batch_size", "64"},
        {"stage1_epochs", "100"},
        {"stage2_epochs", "50"},
        {"freeze_epochs", "3"}}},
  };
  return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  using enum ValueType;
  static const std::vector<ConfigKey> keys = {
      {"seed", kInt, "0", "root seed for every random stream"},
      {"preset", kText, "desk", "hyperparameter preset: desk or paper"},
      {"out", kText, "out", "output directory"},
      {"corpus", kText, "", "corpus directory (default <out>/corpus)"},
      {"manifest", kText, "", "sample manifest (default <corpus>/manifest.tsv)"},
      {"eval_list", kText, "", "evaluation list (default <corpus>/eval.tsv)"},
      {"interactive_list", kText, "", "interactive list (default <corpus>/interactive.tsv)"},
      {"checkpoint", kText, "", "checkpoint to evaluate (default: latest in <out>)"},
      {"resume", kText, "", "checkpoint to resume training from"},
      {"stop_after_epoch", kInt, "0", "stop training after this many epochs (0: run all)"},
      {"image_side", kInt, "224", "input image side in pixels"},
      {"patch_size", kInt, "16", "patch side in pixels"},
      {"backbone_dim", kInt, "32", "backbone feature width D"},
      {"shared_dim", kInt, "16", "shared embedding width C"},
      {"backbone", kText, "feature-file", "backbone kind: feature-file or random-projection"},
      {"feature_channels", kInt, "32", "channels of VTFT feature inputs"},
      {"image_channels", kInt, "3", "raster channels for random-projection inputs"},
      {"layernorm_eps", kReal, "1e-5", "channel LayerNorm stabilizer"},
      {"temperature", kReal, "0.07", "contrastive temperature"},
      {"cosine", kBool, "true", "L2-normalize features before inner products"},
      {"stage1_epochs", kInt, "20", "epochs without out-domain pairs"},
      {"stage2_epochs", kInt, "10", "epochs with out-domain pairs"},
      {"out_domain_ratio", kReal, "0.5", "stage-2 out-domain probability per slot"},
      {"freeze_epochs", kInt, "2", "epochs before the tactile backbone unfreezes"},
      {"in_domain", kBool, "true", "draw in-domain pairs"},
      {"in_domain_share", kReal, "0.5", "in-domain probability per non-out-domain slot"},
      {"out_domain", kBool, "true", "draw out-domain pairs in stage 2"},
      {"middle_tactile_only", kBool, "false", "train on non-endpoint tactile frames only"},
      {"lr", kReal, "1e-3", "AdamW learning rate"},
      {"beta1", kReal, "0.9", "AdamW first-moment decay"},
      {"beta2", kReal, "0.95", "AdamW second-moment decay"},
      {"weight_decay", kReal, "0.05", "AdamW decoupled weight decay"},
      {"adam_eps", kReal, "1e-8", "AdamW denominator stabilizer"},
      {"batch_size", kInt, "16", "pairs per batch"},
      {"hflip", kBool, "false", "random horizontal flips of training inputs"},
      {"threshold", kReal, "0.5", "saliency binarization threshold"},
      {"ap_flavor", kText, "ranking", "AP variant: ranking or interpolated"},
      {"frame_position", kText, "middle", "query frame: start, middle or end"},
      {"use_prototype", kBool, "false", "query with category prototypes"},
      {"baseline", kText, "none", "evaluate a fixed mask instead: none, square, circle"},
      {"report", kText, "", "report name (report-<name>.txt)"},
      {"categories", kInt, "4", "synthetic categories K"},
      {"instances_per_category", kInt, "12", "synthetic touch instances per category"},
      {"frames_per_instance", kInt, "6", "synthetic frames per touch instance"},
      {"instances_per_video", kInt, "2", "synthetic touch instances per video"},
      {"test_fraction", kReal, "0.3", "share of touch instances held out by video"},
      {"out_domain_per_category", kInt, "8", "synthetic out-domain images per category"},
      {"scenes", kInt, "24", "synthetic evaluation scenes"},
      {"interactive_scenes", kInt, "20", "synthetic two-region scenes"},
      {"endpoint_noise", kReal, "0", "noise share of first and last tactile frames"},
      {"nuisance", kReal, "0.6", "scale of per-instance appearance shared by both modalities"},
      {"location_noise", kReal, "0.15", "per-location feature noise"},
      {"input", kText, "", "input file"},
      {"output", kText, "", "output file"},
      {"category", kText, "", "category name"},
      {"objects", kText, "", "comma-separated object names"},
      {"places", kText, "", "comma-separated place names"},
      {"prompts", kText, "", "prompt set file"},
      {"embeddings", kText, "", "image embedding list"},
      {"max_per_video", kInt, "0", "instances kept per (video, category), 0: all"},
      {"epoch", kInt, "0", "epoch to sample pairs for"},
      {"batches", kInt, "1", "batches to sample"},
      {"image", kText, "", "visual feature file or image"},
      {"tactile", kText, "", "tactile feature file"},
      {"render", kText, "", "base image for the overlay"},
      {"fd_step", kReal, "1e-6", "finite-difference step"},
      {"fd_tol", kReal, "1e-4", "finite-difference tolerance"},
      {"gradcheck_seeds", kInt, "1", "random batches to check"},
  };
  return keys;
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

RunConfig::RunConfig() {
  for (const ConfigKey& k : config_keys()) values_[k.name] = k.default_value;
}

void RunConfig::set(std::string_view key, std::string value) {
  const ConfigKey* k = find_key(key);
  if (k == nullptr) throw ValidationError("unknown config key '" + std::string(key) + "'");
  check_value(*k, value);
  values_[k->name] = std::move(value);
  explicit_.insert(k->name);
}

bool RunConfig::explicitly_set(std::string_view key) const {
  return explicit_.contains(key);
}

const std::string& RunConfig::text(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ValidationError("unknown config key '" + std::string(key) + "'");
  }
  return it->second;
}

std::uint64_t RunConfig::integer(std::string_view key) const {
  std::uint64_t v = 0;
  if (!parse_u64(text(key), v)) {
    throw ValidationError("key '" + std::string(key) + "' is not an integer");
  }
  return v;
}

double RunConfig::real(std::string_view key) const {
  double v = 0;
  if (!parse_real(text(key), v)) {
    throw ValidationError("key '" + std::string(key) + "' is not a number");
  }
  return v;
}

bool RunConfig::flag(std::string_view key) const {
  bool v = false;
  if (!parse_bool(text(key), v)) {
    throw ValidationError("key '" + std::string(key) + "' is not a boolean");
  }
  return v;
}

std::filesystem::path RunConfig::path(std::string_view key) const {
  return std::filesystem::path(text(key));
}

void RunConfig::merge_text(std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(std::string(origin) + " line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      set(key, value);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(origin) + " line " +
                            std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
  merge_text(read_file_bytes(path), path.string());
}

void RunConfig::merge_environment() {
  if (const char* env = std::getenv("STT_SEED"); env != nullptr && *env != '\0') {
    try {
      set("seed", trim(env));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("STT_SEED: ") + e.what());
    }
  }
}

void RunConfig::apply_preset() {
  const auto it = presets().find(text("preset"));
  if (it == presets().end()) {
    throw ValidationError("unknown preset '" + text("preset") + "'");
  }
  for (const auto& [key, value] : it->second) {
    if (!explicitly_set(key)) values_[key] = value;
  }
}

EncoderConfig RunConfig::encoder_config() const {
  EncoderConfig c;
  c.image_side = integer("image_side");
  c.patch_size = integer("patch_size");
  c.backbone_dim = integer("backbone_dim");
  c.shared_dim = integer("shared_dim");
  c.backbone_kind = parse_backbone_kind(text("backbone"));
  c.feature_channels = integer("feature_channels");
  c.image_channels = integer("image_channels");
  c.layernorm_eps = real("layernorm_eps");
  c.validate();
  return c;
}

LossConfig RunConfig::loss_config() const {
  LossConfig c;
  c.temperature = real("temperature");
  c.cosine = flag("cosine");
  c.validate();
  return c;
}

CurriculumSchedule RunConfig::schedule() const {
  CurriculumSchedule s;
  s.stage1_epochs = integer("stage1_epochs");
  s.stage2_epochs = integer("stage2_epochs");
  s.out_domain_ratio = real("out_domain_ratio");
  s.freeze_epochs = integer("freeze_epochs");
  s.validate();
  return s;
}

PairingOptions RunConfig::pairing_options() const {
  PairingOptions p;
  p.in_domain = flag("in_domain");
  p.in_domain_share = real("in_domain_share");
  p.out_domain = flag("out_domain");
  p.middle_tactile_only = flag("middle_tactile_only");
  if (!(p.in_domain_share >= 0.0 && p.in_domain_share <= 1.0)) {
    throw ValidationError("in_domain_share must lie in [0, 1]");
  }
  return p;
}

AdamWOptions RunConfig::adamw_options() const {
  AdamWOptions o;
  o.lr = real("lr");
  o.beta1 = real("beta1");
  o.beta2 = real("beta2");
  o.eps = real("adam_eps");
  o.weight_decay = real("weight_decay");
  if (!(o.lr >= 0.0)) throw ValidationError("lr must be >= 0");
  if (!(o.beta1 > 0.0 && o.beta1 < 1.0) || !(o.beta2 > 0.0 && o.beta2 < 1.0)) {
    throw ValidationError("betas must lie in (0, 1)");
  }
  if (!(o.eps > 0.0)) throw ValidationError("adam_eps must be > 0");
  if (!(o.weight_decay >= 0.0)) throw ValidationError("weight_decay must be >= 0");
  return o;
}

EvalConfig RunConfig::eval_config() const {
  EvalConfig c;
  c.threshold = real("threshold");
  c.ap_flavor = parse_ap_flavor(text("ap_flavor"));
  c.frame_position = parse_frame_position(text("frame_position"));
  c.use_prototype = flag("use_prototype");
  c.validate();
  return c;
}

std::size_t RunConfig::batch_size() const {
  const std::uint64_t n = integer("batch_size");
  if (n == 0) throw ValidationError("batch_size must be >= 1");
  return n;
}

std::filesystem::path RunConfig::corpus_dir() const {
  if (!text("corpus").empty()) return path("corpus");
  return path("out") / "corpus";
}

std::filesystem::path RunConfig::manifest_path() const {
  if (!text("manifest").empty()) return path("manifest");
  return corpus_dir() / "manifest.tsv";
}

std::filesystem::path RunConfig::eval_list_path() const {
  if (!text("eval_list").empty()) return path("eval_list");
  return corpus_dir() / "eval.tsv";
}

std::filesystem::path RunConfig::interactive_list_path() const {
  if (!text("interactive_list").empty()) return path("interactive_list");
  return corpus_dir() / "interactive.tsv";
}

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

}  // namespace tactloc

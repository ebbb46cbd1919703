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

#include "tactloc/trainer.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tactloc/autodiff.h"
#include "tactloc/checkpoint.h"
#include "tactloc/errors.h"
#include "tactloc/model.h"
#include "tactloc/raster.h"
#include "tactloc/rng.h"

namespace tactloc {
namespace {

enum : std::uint64_t { kFlipStream = 0xF11B };

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Header comment plus the first `steps` records of an existing log.
std::vector<std::string> retained_log(const std::filesystem::path& path,
                                      std::size_t steps) {
  std::vector<std::string> out;
  if (!std::filesystem::exists(path)) return out;
  std::istringstream in(read_file_bytes(path));
  std::string line;
  std::size_t kept = 0;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) {
      out.push_back(line);
    } else if (!line.empty() && kept < steps) {
      out.push_back(line);
      ++kept;
    }
  }
  if (kept != steps) {
    throw ValidationError("loss log '" + path.string() + "' has " +
                          std::to_string(kept) + " records, checkpoint expects " +
                          std::to_string(steps));
  }
  return out;
}

void write_log(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const std::string& l : lines) text += l + "\n";
  write_file_bytes(path, text);
}

}  // namespace

std::string TrainOptions::echo() const {
  std::ostringstream o;
  o << "seed = " << seed << "\n"
    << "image_side = " << encoder.image_side << "\n"
    << "patch_size = " << encoder.patch_size << "\n"
    << "backbone_dim = " << encoder.backbone_dim << "\n"
    << "shared_dim = " << encoder.shared_dim << "\n"
    << "backbone = " << to_string(encoder.backbone_kind) << "\n"
    << "feature_channels = " << encoder.feature_channels << "\n"
    << "image_channels = " << encoder.image_channels << "\n"
    << "layernorm_eps = " << exact(encoder.layernorm_eps) << "\n"
    << "temperature = " << exact(loss.temperature) << "\n"
    << "cosine = " << (loss.cosine ? "true" : "false") << "\n"
    << "stage1_epochs = " << schedule.stage1_epochs << "\n"
    << "stage2_epochs = " << schedule.stage2_epochs << "\n"
    << "out_domain_ratio = " << exact(schedule.out_domain_ratio) << "\n"
    << "freeze_epochs = " << schedule.freeze_epochs << "\n"
    << "in_domain = " << (pairing.in_domain ? "true" : "false") << "\n"
    << "in_domain_share = " << exact(pairing.in_domain_share) << "\n"
    << "out_domain = " << (pairing.out_domain ? "true" : "false") << "\n"
    << "middle_tactile_only = " << (pairing.middle_tactile_only ? "true" : "false") << "\n"
    << "lr = " << exact(adamw.lr) << "\n"
    << "beta1 = " << exact(adamw.beta1) << "\n"
    << "beta2 = " << exact(adamw.beta2) << "\n"
    << "adam_eps = " << exact(adamw.eps) << "\n"
    << "weight_decay = " << exact(adamw.weight_decay) << "\n"
    << "batch_size = " << batch_size << "\n"
    << "hflip = " << (hflip ? "true" : "false") << "\n";
  return o.str();
}

TrainOptions train_options_from(const RunConfig& config) {
  TrainOptions o;
  o.encoder = config.encoder_config();
  o.loss = config.loss_config();
  o.schedule = config.schedule();
  o.pairing = config.pairing_options();
  o.adamw = config.adamw_options();
  o.batch_size = config.batch_size();
  o.seed = config.seed();
  o.hflip = config.flag("hflip");
  o.out_dir = config.path("out");
  o.resume = config.path("resume");
  o.stop_after_epoch = config.integer("stop_after_epoch");
  return o;
}

std::string format_loss_record(const LossRecord& r) {
  return std::to_string(r.step) + " " + std::to_string(r.stage) + " " +
         std::to_string(r.epoch) + " " + exact(r.loss);
}

std::size_t steps_per_epoch(const TrainingCorpus& corpus, const TrainOptions& options,
                            std::size_t epoch) {
  const bool out_domain = options.schedule.stage(epoch) == 2 &&
                          options.pairing.out_domain &&
                          options.schedule.out_domain_ratio > 0.0;
  const std::size_t pool = corpus.pool_size(out_domain ? 2 : 1);
  return std::max<std::size_t>(1, (pool + options.batch_size - 1) / options.batch_size);
}

TrainResult train(const TrainOptions& options, const CorpusIndex& data,
                  const TrainObserver& observer) {
  options.schedule.validate();
  options.loss.validate();
  if (options.batch_size == 0) throw ValidationError("batch_size must be >= 1");
  const TrainingCorpus corpus(data.train_instances(), data.out_domain());
  if (corpus.instances().empty()) {
    throw ValidationError("the manifest has no training touch instances");
  }

  Model model(options.encoder, options.seed);
  std::size_t start_epoch = 0;
  std::size_t step = 0;
  std::vector<std::string> log_lines = {"# seed=" + std::to_string(options.seed)};
  const std::filesystem::path log_path =
      options.out_dir.empty() ? std::filesystem::path() : options.out_dir / "loss.log";

  if (!options.resume.empty()) {
    Checkpoint ck = load_checkpoint(options.resume);
    if (ck.config_echo != options.echo()) {
      throw ValidationError("checkpoint '" + options.resume.string() +
                            "' was written with a different configuration");
    }
    model = Model(options.encoder, std::move(ck.params));
    start_epoch = ck.epoch;
    step = ck.global_step;
    if (!log_path.empty()) {
      std::vector<std::string> kept = retained_log(log_path, step);
      if (!kept.empty()) log_lines = std::move(kept);
    }
  }
  if (!options.out_dir.empty()) std::filesystem::create_directories(options.out_dir);
  if (observer.on_start) observer.on_start(model.params());

  const std::size_t total = options.schedule.total_epochs();
  const std::size_t end = options.stop_after_epoch > 0
                              ? std::min(options.stop_after_epoch, total)
                              : total;
  InputStore store;
  TrainResult result;
  for (std::size_t epoch = start_epoch; epoch < end; ++epoch) {
    const int stage = options.schedule.stage(epoch);
    model.set_tactile_backbone_trainable(epoch >= options.schedule.freeze_epochs);
    const std::size_t steps = steps_per_epoch(corpus, options, epoch);
    for (std::size_t b = 0; b < steps; ++b, ++step) {
      const std::vector<PairSpec> pairs =
          sample_training_batch(corpus, options.schedule, options.pairing, epoch, b,
                                options.batch_size, options.seed);
      if (observer.on_batch) observer.on_batch(epoch, b, pairs);

      Graph g;
      std::vector<Var> tactile;
      std::vector<Var> visual;
      for (std::size_t slot = 0; slot < pairs.size(); ++slot) {
        const PairSpec& p = pairs[slot];
        bool flip_t = false;
        bool flip_v = false;
        if (options.hflip) {
          Rng coin(options.seed, {kFlipStream, epoch, b, slot});
          flip_t = coin.bernoulli(0.5);
          flip_v = coin.bernoulli(0.5);
        }
        const SampleRecord& t_rec = data.record(p.tactile_sample_id);
        const SampleRecord& v_rec = data.record(p.visual_sample_id);
        tactile.push_back(model.tactile().forward(
            g, model.params(),
            g.constant(store.prepared(model.tactile(), *t_rec.tactile_path, flip_t))));
        visual.push_back(model.visual().forward(
            g, model.params(),
            g.constant(store.prepared(model.visual(), v_rec.image_path, flip_v))));
      }
      double loss = 0.0;
      try {
        const Var s = batch_similarity_matrix(g, tactile, visual, options.loss);
        const Var l = symmetric_infonce(g, s, options.loss);
        loss = g.value(l).item();
        const auto grads = reverse_mode_gradients(g, l, model.params());
        adamw_step(model.params(), grads, options.adamw);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("training step " + std::to_string(step) + ": " + e.what());
      }
      if (!std::isfinite(loss)) {
        throw std::runtime_error("non-finite loss at training step " + std::to_string(step));
      }
      const LossRecord rec{step, stage, epoch, loss};
      result.log.push_back(rec);
      log_lines.push_back(format_loss_record(rec));
    }
    if (!options.out_dir.empty()) {
      Checkpoint ck;
      ck.epoch = epoch + 1;
      ck.global_step = step;
      ck.seed = options.seed;
      ck.config_echo = options.echo();
      ck.params = model.params();
      save_checkpoint(ck, checkpoint_path(options.out_dir, epoch + 1));
      write_log(log_path, log_lines);
    }
    if (observer.on_epoch_end) observer.on_epoch_end(epoch, model.params());
    result.epochs_completed = epoch + 1;
  }
  if (result.epochs_completed == 0) result.epochs_completed = start_epoch;
  result.global_step = step;
  result.params = model.params();
  return result;
}

}  // namespace tactloc

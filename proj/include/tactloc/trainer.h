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

#ifndef TACTLOC_TRAINER_H_
#define TACTLOC_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tactloc/adamw.h"
#include "tactloc/alignment.h"
#include "tactloc/dataset.h"
#include "tactloc/encoder.h"
#include "tactloc/pairing.h"
#include "tactloc/param_set.h"
#include "tactloc/run_config.h"

namespace tactloc {

struct TrainOptions {
  EncoderConfig encoder;
  LossConfig loss;
  CurriculumSchedule schedule;
  PairingOptions pairing;
  AdamWOptions adamw;
  std::size_t batch_size = 16;
  std::uint64_t seed = 0;
  bool hflip = false;
  // Empty: nothing is written.
  std::filesystem::path out_dir;
  std::filesystem::path resume;
  // Stop once this many epochs are complete; 0 runs the whole schedule.
  std::size_t stop_after_epoch = 0;

  // Settings that determine the numerics, one `key = value` per line. Stored
  // in checkpoints and compared on resume.
  std::string echo() const;
};

TrainOptions train_options_from(const RunConfig& config);

struct LossRecord {
  std::size_t step = 0;
  int stage = 1;
  std::size_t epoch = 0;
  double loss = 0.0;
};

// "<step> <stage> <epoch> <loss>" with the loss printed to 17 digits.
std::string format_loss_record(const LossRecord& record);

struct TrainObserver {
  std::function<void(std::size_t epoch, std::size_t batch,
                     const std::vector<PairSpec>& pairs)>
      on_batch;
  // Called after the epoch's last step with the current parameters.
  std::function<void(std::size_t epoch, const ParamSet& params)> on_epoch_end;
  // Called once before the first step with the initial parameters.
  std::function<void(const ParamSet& params)> on_start;
};

struct TrainResult {
  ParamSet params;
  // Steps run by this call (a resumed run starts mid-log).
  std::vector<LossRecord> log;
  std::size_t epochs_completed = 0;
  std::size_t global_step = 0;
};

// Batches per epoch: ceil(frames in the stage's pool / batch size).
std::size_t steps_per_epoch(const TrainingCorpus& corpus, const TrainOptions& options,
                            std::size_t epoch);

// Epochs 0..F-1 train the aligners only; from epoch F the tactile backbone
// joins. The visual backbone never trains. Each epoch writes ckpt-<n>.bin
// (n = epochs completed) and rewrites loss.log under out_dir. A non-finite
// loss aborts with std::runtime_error naming the step.
TrainResult train(const TrainOptions& options, const CorpusIndex& data,
                  const TrainObserver& observer = {});

}  // namespace tactloc

#endif  // TACTLOC_TRAINER_H_

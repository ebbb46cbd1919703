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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "tactloc/checkpoint.h"
#include "tactloc/concept_queries.h"
#include "tactloc/dedup.h"
#include "tactloc/errors.h"
#include "tactloc/feature_file.h"
#include "tactloc/manifest.h"
#include "tactloc/pipeline.h"
#include "tactloc/prompt_filter.h"
#include "tactloc/raster.h"
#include "tactloc/records.h"
#include "tactloc/report.h"
#include "tactloc/split.h"

namespace tactloc {
namespace {

struct Command {
  const char* name;
  const char* help;
};

const Command kCommands[] = {
    {"synth", "generate a synthetic corpus"},
    {"extract-instances", "group manifest records into touch instances"},
    {"split", "assign whole videos to train and test"},
    {"dedup", "drop byte-identical files from a path list"},
    {"filter", "keep images whose positive prompt wins"},
    {"queries", "emit concept-query templates"},
    {"pairs", "print sampled training pairs"},
    {"prototypes", "compute per-category tactile prototypes"},
    {"train", "train the aligners"},
    {"eval", "localization mAP and mIoU"},
    {"eval-interactive", "two-query IIoU"},
    {"robustness", "mAP and mIoU for start, middle and end frames"},
    {"localize", "write a heatmap for one image"},
    {"gradcheck", "compare gradients with finite differences"},
};

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path required_path(const RunConfig& c, const char* key) {
  const std::filesystem::path p = c.path(key);
  if (p.empty()) throw ValidationError(std::string("missing --") + key);
  if (!std::filesystem::exists(p)) {
    throw ValidationError(std::string("--") + key + " '" + p.string() + "' does not exist");
  }
  return p;
}

// Writes to --output when given, else to `out`.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.text("output").empty()) {
    out << text;
  } else {
    write_file_bytes(c.path("output"), text);
  }
}

std::filesystem::path input_manifest(const RunConfig& c) {
  const std::filesystem::path p = c.text("input").empty() ? c.manifest_path() : c.path("input");
  if (!std::filesystem::exists(p)) {
    throw ValidationError("manifest '" + p.string() + "' does not exist");
  }
  return p;
}

std::string format_instances(const std::vector<TouchInstance>& instances) {
  std::string text;
  for (const TouchInstance& t : instances) {
    std::string members;
    for (const std::string& m : t.members) members += (members.empty() ? "" : ",") + m;
    text += format_key_value_line({{"instance_id", t.instance_id},
                                   {"video_id", t.video_id},
                                   {"category", t.category},
                                   {"start", std::to_string(t.start)},
                                   {"end", std::to_string(t.end)},
                                   {"length", std::to_string(t.length())},
                                   {"members", members}}) +
            "\n";
  }
  return text;
}

int cmd_synth(const RunConfig& c, std::ostream& out) {
  const SyntheticCorpus s = run_synth(c);
  out << "corpus " << c.corpus_dir().string() << "\n"
      << "tactile_frames " << s.tactile_frames << "\n"
      << "train_instances " << s.train_instances << "\n"
      << "test_instances " << s.test_instances << "\n"
      << "out_domain_images " << s.out_domain_images << "\n"
      << "scenes " << s.scenes << "\n"
      << "eval_samples " << s.eval_samples << "\n"
      << "interactive_samples " << s.interactive_samples << "\n";
  return 0;
}

int cmd_extract(const RunConfig& c, std::ostream& out) {
  const Manifest m = parse_manifest(input_manifest(c));
  emit(c, out, format_instances(extract_touch_instances(touch_records(m.records))));
  return 0;
}

int cmd_split(const RunConfig& c, std::ostream& out) {
  const std::filesystem::path path = input_manifest(c);
  Manifest m = parse_manifest(path);
  std::vector<TouchInstance> instances = extract_touch_instances(touch_records(m.records));
  instances = cap_instances_per_video(instances, c.integer("max_per_video"));
  const VideoSplit split = split_by_video(instances, c.real("test_fraction"), c.seed());
  std::map<std::string, std::string> split_of;
  for (const std::string& v : split.train_videos) split_of[v] = "train";
  for (const std::string& v : split.test_videos) split_of[v] = "test";
  // Out-domain records keep their tags; touch records take their video's.
  for (SampleRecord& r : m.records) {
    if (auto it = split_of.find(r.video_id); it != split_of.end() && r.has_tactile()) {
      r.split = it->second;
    }
  }
  if (!c.text("output").empty()) write_manifest(c.path("output"), m.records, m.categories);
  out << "seed " << c.seed() << "\n"
      << "train_videos " << split.train_videos.size() << "\n"
      << "test_videos " << split.test_videos.size() << "\n"
      << "train_instances " << split.train.size() << "\n"
      << "test_instances " << split.test.size() << "\n";
  return 0;
}

int cmd_dedup(const RunConfig& c, std::ostream& out) {
  const std::filesystem::path list = required_path(c, "input");
  std::vector<std::string> paths;
  for (const std::string& line : split_list(read_file_bytes(list), '\n')) {
    const std::string p = trim(line);
    if (p.empty() || p.starts_with("#")) continue;
    paths.push_back(resolve_relative(list, p).string());
  }
  const DedupResult r = dedup_by_content_hash(paths);
  std::string text;
  for (const std::string& k : r.kept) text += format_key_value_line({{"kept", k}}) + "\n";
  for (const DroppedDuplicate& d : r.dropped) {
    text += format_key_value_line({{"dropped", d.path}, {"duplicate_of", d.duplicate_of}}) + "\n";
  }
  emit(c, out, text);
  return 0;
}

int cmd_filter(const RunConfig& c, std::ostream& out) {
  const PromptSet prompts = read_prompt_set(required_path(c, "prompts"));
  const std::vector<ImageEmbedding> images = read_embedding_list(required_path(c, "embeddings"));
  PromptFilterResult r;
  try {
    r = filter_by_prompt_argmax(images, prompts);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  std::string text;
  for (const std::string& id : r.retained) {
    text += format_key_value_line({{"id", id}, {"status", "retained"}}) + "\n";
  }
  for (const PromptRejection& rej : r.rejected) {
    text += format_key_value_line(
                {{"id", rej.id}, {"status", "rejected"}, {"winner", rej.winning_prompt}}) +
            "\n";
  }
  emit(c, out, text);
  return 0;
}

int cmd_queries(const RunConfig& c, std::ostream& out) {
  std::string text;
  for (const std::string& q :
       emit_concept_query_templates(c.text("category"), split_list(c.text("objects"), ','),
                                    split_list(c.text("places"), ','))) {
    text += q + "\n";
  }
  emit(c, out, text);
  return 0;
}

int cmd_pairs(const RunConfig& c, std::ostream& out) {
  const CorpusIndex data(input_manifest(c));
  const TrainingCorpus corpus(data.train_instances(), data.out_domain());
  const std::size_t epoch = c.integer("epoch");
  std::string text;
  for (std::size_t b = 0; b < c.integer("batches"); ++b) {
    std::vector<PairSpec> pairs;
    try {
      pairs = sample_training_batch(corpus, c.schedule(), c.pairing_options(), epoch, b,
                                    c.batch_size(), c.seed());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    text += format_pairs(pairs, epoch, b);
  }
  emit(c, out, text);
  return 0;
}

int cmd_prototypes(const RunConfig& c, std::ostream& out) {
  const CorpusIndex corpus(input_manifest(c));
  Localizer loc(load_model(c), c.loss_config(), corpus);
  const PrototypeTable& table = loc.prototypes();
  const std::filesystem::path dir = c.path("out") / "prototypes";
  std::filesystem::create_directories(dir);
  std::string text;
  for (const auto& [cat, p] : table.categories) {
    const std::pair<const char*, const TactileDescriptor*> parts[] = {
        {"start", &p.start}, {"middle", &p.middle}, {"end", &p.end}, {"overall", &p.overall}};
    for (const auto& [part, d] : parts) {
      const std::filesystem::path file = dir / (cat + "-" + part + ".vtft");
      save_feature_map(FeatureMap(d->size(), 1, 1, d->values), file);
    }
    text += format_key_value_line({{"category", cat},
                                   {"instances", std::to_string(p.instance_count)},
                                   {"dir", dir.string()}}) +
            "\n";
  }
  emit(c, out, text);
  return 0;
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  const TrainResult r = run_train(c);
  out << "epochs " << r.epochs_completed << "\n"
      << "steps " << r.global_step << "\n";
  if (!r.log.empty()) out << "final_loss " << exact(r.log.back().loss) << "\n";
  out << "out " << c.path("out").string() << "\n";
  return 0;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  out << format_report_table(run_eval(c));
  return 0;
}

int cmd_interactive(const RunConfig& c, std::ostream& out) {
  out << format_report_table(run_interactive(c));
  return 0;
}

int cmd_robustness(const RunConfig& c, std::ostream& out) {
  out << format_robustness_table(run_robustness(c));
  return 0;
}

int cmd_localize(const RunConfig& c, std::ostream& out) {
  const LocalizeResult r = run_localize(c);
  out << "heatmap " << r.gray_path.string() << "\n"
      << "overlay " << r.overlay_path.string() << "\n";
  return 0;
}

int cmd_gradcheck(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const GradCheckReport r = run_gradcheck(c);
  for (const GradCheckEntry& e : r.parameters) {
    out << e.name << " entries=" << e.entries
        << " max_rel_err=" << exact(e.max_relative_error) << "\n";
  }
  out << "max_relative_error " << exact(r.max_relative_error) << "\n"
      << "tolerance " << exact(r.tolerance) << "\n"
      << (r.passed ? "PASS" : "FAIL") << "\n";
  if (!r.passed) {
    err << "gradient check failed: " << exact(r.max_relative_error) << " > "
        << exact(r.tolerance) << "\n";
    return 2;
  }
  return 0;
}

int dispatch(const std::string& name, const RunConfig& c, std::ostream& out,
             std::ostream& err) {
  if (name == "synth") return cmd_synth(c, out);
  if (name == "extract-instances") return cmd_extract(c, out);
  if (name == "split") return cmd_split(c, out);
  if (name == "dedup") return cmd_dedup(c, out);
  if (name == "filter") return cmd_filter(c, out);
  if (name == "queries") return cmd_queries(c, out);
  if (name == "pairs") return cmd_pairs(c, out);
  if (name == "prototypes") return cmd_prototypes(c, out);
  if (name == "train") return cmd_train(c, out);
  if (name == "eval") return cmd_eval(c, out);
  if (name == "eval-interactive") return cmd_interactive(c, out);
  if (name == "robustness") return cmd_robustness(c, out);
  if (name == "localize") return cmd_localize(c, out);
  if (name == "gradcheck") return cmd_gradcheck(c, out, err);
  throw ValidationError("unknown subcommand '" + name + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Touch-conditioned material localization toolkit."};
  app.require_subcommand(1, 1);
  std::string config_file;
  std::map<std::string, std::string> flags;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_file, "config file of `key = value` lines");
    for (const ConfigKey& key : config_keys()) {
      sub->add_option("--" + key.name, flags[key.name],
                      key.help + " [" + key.default_value + "]");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig config;
    if (!config_file.empty()) {
      if (!std::filesystem::exists(config_file)) {
        throw ValidationError("config file '" + config_file + "' does not exist");
      }
      config.merge_file(config_file);
    }
    config.merge_environment();
    for (const ConfigKey& key : config_keys()) {
      if (sub->count("--" + key.name) > 0) config.set(key.name, flags[key.name]);
    }
    config.apply_preset();
    return dispatch(sub->get_name(), config, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tactloc

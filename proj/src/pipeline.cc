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

#include "tactloc/pipeline.h"

#include <memory>

#include "tactloc/autodiff.h"
#include "tactloc/checkpoint.h"
#include "tactloc/errors.h"
#include "tactloc/eval_list.h"
#include "tactloc/heatmap.h"
#include "tactloc/report.h"
#include "tactloc/rng.h"

namespace tactloc {
namespace {

std::string report_name(const RunConfig& config, const std::string& fallback) {
  const std::string& name = config.text("report");
  return name.empty() ? fallback : name;
}

void write_report_file(const RunConfig& config, const std::string& name,
                       const std::string& text) {
  const std::filesystem::path out = config.path("out");
  std::filesystem::create_directories(out);
  write_text(out / ("report-" + name + ".txt"), text);
}

void require_file(const std::filesystem::path& path, const char* what) {
  if (!std::filesystem::exists(path)) {
    throw ValidationError(std::string(what) + " '" + path.string() + "' does not exist");
  }
}

std::optional<BaselineKind> baseline_of(const RunConfig& config) {
  const std::string& b = config.text("baseline");
  if (b == "none") return std::nullopt;
  return parse_baseline_kind(b);
}

std::vector<LocalizationSample> load_localization_samples(
    const std::vector<EvalEntry>& entries) {
  std::vector<LocalizationSample> out;
  for (const EvalEntry& e : entries) {
    out.push_back({e.sample_id, e.category, e.instance_id, load_mask(e.mask_path)});
  }
  return out;
}

}  // namespace

Localizer::Localizer(Model model, LossConfig loss, const CorpusIndex& corpus)
    : model_(std::move(model)), loss_(loss), corpus_(corpus) {}

TactileDescriptor Localizer::frame_descriptor(const TouchInstance& instance,
                                              std::size_t offset) {
  const std::string& sid = instance.members.at(offset);
  if (auto it = frame_cache_.find(sid); it != frame_cache_.end()) return it->second;
  const SampleRecord& rec = corpus_.record(sid);
  if (!rec.tactile_path) throw ValidationError("sample '" + sid + "' has no tactile frame");
  TactileDescriptor d = tactile_descriptor(model_, inputs_.get(*rec.tactile_path));
  frame_cache_.emplace(sid, d);
  return d;
}

const PrototypeTable& Localizer::prototypes() {
  if (!prototypes_) {
    prototypes_ = compute_prototypes(
        group_by_category(corpus_.train_instances()),
        [this](const TouchInstance& t, std::size_t offset) {
          return frame_descriptor(t, offset);
        });
  }
  return *prototypes_;
}

TactileDescriptor Localizer::query(const std::string& instance_id,
                                   const std::string& category,
                                   const EvalConfig& config) {
  if (config.use_prototype) {
    try {
      return prototypes().at(category).overall;
    } catch (const std::out_of_range& e) {
      throw ValidationError(e.what());
    }
  }
  if (instance_id.empty()) {
    throw ValidationError("query for category '" + category + "' names no touch instance");
  }
  const TouchInstance& t = corpus_.instance(instance_id);
  return descriptor_at(t, config.frame_position,
                       [this](const TouchInstance& inst, std::size_t offset) {
                         return frame_descriptor(inst, offset);
                       });
}

SaliencyMap Localizer::saliency(const std::filesystem::path& image,
                                const TactileDescriptor& descriptor, std::size_t width,
                                std::size_t height) {
  const std::string key = image.string();
  auto it = visual_cache_.find(key);
  if (it == visual_cache_.end()) {
    it = visual_cache_.emplace(key, visual_features(model_, inputs_.get(image))).first;
  }
  SaliencyMap s = compute_saliency(it->second, descriptor, loss_, width, height);
  s.sample_id = image.stem().string();
  return s;
}

SyntheticSpec synthetic_spec_from(const RunConfig& config) {
  SyntheticSpec s;
  s.categories = config.integer("categories");
  s.instances_per_category = config.integer("instances_per_category");
  s.frames_per_instance = config.integer("frames_per_instance");
  s.instances_per_video = config.integer("instances_per_video");
  s.test_fraction = config.real("test_fraction");
  s.out_domain_per_category = config.integer("out_domain_per_category");
  s.scenes = config.integer("scenes");
  s.interactive_scenes = config.integer("interactive_scenes");
  const EncoderConfig enc = config.encoder_config();
  s.grid = enc.grid();
  s.feature_dim = enc.feature_channels;
  s.image_side = enc.image_side;
  s.endpoint_noise = config.real("endpoint_noise");
  s.nuisance = config.real("nuisance");
  s.location_noise = config.real("location_noise");
  s.validate();
  return s;
}

SyntheticCorpus run_synth(const RunConfig& config) {
  if (config.encoder_config().backbone_kind != BackboneKind::kFeatureFile) {
    throw ValidationError("the synthetic corpus is written as feature files; "
                          "use backbone = feature-file");
  }
  return generate_synthetic_corpus(synthetic_spec_from(config), config.seed(),
                                   config.corpus_dir());
}

TrainResult run_train(const RunConfig& config, const TrainObserver& observer) {
  const TrainOptions options = train_options_from(config);
  require_file(config.manifest_path(), "manifest");
  if (!options.resume.empty()) require_file(options.resume, "checkpoint");
  const CorpusIndex data(config.manifest_path());
  return train(options, data, observer);
}

Model load_model(const RunConfig& config) {
  const std::filesystem::path path = config.text("checkpoint").empty()
                                         ? latest_checkpoint(config.path("out"))
                                         : config.path("checkpoint");
  require_file(path, "checkpoint");
  Checkpoint ck = load_checkpoint(path);
  try {
    return Model(config.encoder_config(), std::move(ck.params));
  } catch (const std::out_of_range& e) {
    throw ValidationError("checkpoint '" + path.string() +
                          "' does not match the encoder configuration: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError("checkpoint '" + path.string() +
                          "' does not match the encoder configuration: " + e.what());
  }
}

EvalReport run_eval(const RunConfig& config) {
  const EvalConfig ecfg = config.eval_config();
  require_file(config.eval_list_path(), "evaluation list");
  const std::vector<LocalizationSample> samples =
      load_localization_samples(read_eval_list(config.eval_list_path()));
  EvalReport report;
  if (const auto baseline = baseline_of(config)) {
    report = evaluate_localization(
        samples,
        [&](const LocalizationSample& s) {
          return saliency_from_mask(baseline_mask(*baseline, s.gt.width(), s.gt.height()));
        },
        ecfg);
    report.label = "baseline-" + std::string(to_string(*baseline));
  } else {
    require_file(config.manifest_path(), "manifest");
    const CorpusIndex corpus(config.manifest_path());
    const std::vector<EvalEntry> entries = read_eval_list(config.eval_list_path());
    std::map<std::string, std::string> image_of;
    for (const EvalEntry& e : entries) image_of[e.sample_id] = e.image_path;
    Localizer loc(load_model(config), config.loss_config(), corpus);
    report = evaluate_localization(
        samples,
        [&](const LocalizationSample& s) {
          return loc.saliency(image_of.at(s.sample_id),
                              loc.query(s.instance_id, s.category, ecfg), s.gt.width(),
                              s.gt.height());
        },
        ecfg);
    report.label = ecfg.use_prototype ? "eval-prototype" : "eval";
  }
  report.seed = config.seed();
  const std::string name = report_name(config, report.label);
  write_report_file(config, name, format_report(report));
  return report;
}

EvalReport run_interactive(const RunConfig& config) {
  const EvalConfig ecfg = config.eval_config();
  require_file(config.interactive_list_path(), "interactive list");
  require_file(config.manifest_path(), "manifest");
  const std::vector<InteractiveEntry> entries =
      read_interactive_list(config.interactive_list_path());
  const CorpusIndex corpus(config.manifest_path());
  Localizer loc(load_model(config), config.loss_config(), corpus);

  std::vector<InteractiveSample> samples;
  for (const InteractiveEntry& e : entries) {
    samples.push_back({e.sample_id, e.category, e.instance_id, load_mask(e.mask_path),
                       e.category2, e.instance2_id, load_mask(e.mask2_path)});
  }
  std::map<std::string, std::string> image_of;
  for (const InteractiveEntry& e : entries) image_of[e.sample_id] = e.image_path;
  auto saliency = [&](const InteractiveSample& s, int which) {
    const MaskImage& gt = which == 0 ? s.gt_a : s.gt_b;
    return loc.saliency(image_of.at(s.sample_id),
                        loc.query(which == 0 ? s.instance_a : s.instance_b,
                                  which == 0 ? s.category_a : s.category_b, ecfg),
                        gt.width(), gt.height());
  };
  const InteractiveResult result = evaluate_interactive(samples, saliency, ecfg);

  // Per-query localization metrics alongside the joint success rate.
  std::vector<LocalizationSample> queries;
  for (const InteractiveSample& s : samples) {
    queries.push_back({s.sample_id + "#a", s.category_a, s.instance_a, s.gt_a});
    queries.push_back({s.sample_id + "#b", s.category_b, s.instance_b, s.gt_b});
  }
  EvalReport report = evaluate_localization(
      queries,
      [&](const LocalizationSample& q) {
        const std::string id = q.sample_id.substr(0, q.sample_id.size() - 2);
        return loc.saliency(image_of.at(id), loc.query(q.instance_id, q.category, ecfg),
                            q.gt.width(), q.gt.height());
      },
      ecfg);
  report.label = "interactive";
  report.seed = config.seed();
  report.iiou = result.iiou;
  write_report_file(config, report_name(config, "interactive"), format_report(report));
  return report;
}

std::map<FramePosition, EvalReport> run_robustness(const RunConfig& config) {
  const EvalConfig ecfg = config.eval_config();
  require_file(config.eval_list_path(), "evaluation list");
  require_file(config.manifest_path(), "manifest");
  const std::vector<EvalEntry> entries = read_eval_list(config.eval_list_path());
  const std::vector<LocalizationSample> samples = load_localization_samples(entries);
  const CorpusIndex corpus(config.manifest_path());
  Localizer loc(load_model(config), config.loss_config(), corpus);
  std::map<std::string, std::string> image_of;
  for (const EvalEntry& e : entries) image_of[e.sample_id] = e.image_path;
  auto reports = robustness_report(
      samples,
      [&](const LocalizationSample& s, FramePosition pos) {
        EvalConfig c = ecfg;
        c.frame_position = pos;
        c.use_prototype = false;
        return loc.saliency(image_of.at(s.sample_id), loc.query(s.instance_id, s.category, c),
                            s.gt.width(), s.gt.height());
      },
      ecfg);
  for (auto& [pos, r] : reports) {
    r.label = "robustness";
    r.seed = config.seed();
  }
  write_report_file(config, report_name(config, "robustness"), format_robustness(reports));
  return reports;
}

LocalizeResult run_localize(const RunConfig& config) {
  const std::filesystem::path image = config.path("image");
  if (image.empty()) throw ValidationError("localize needs --image");
  require_file(image, "image");
  const std::string& tactile = config.text("tactile");
  const std::string& category = config.text("category");
  if (tactile.empty() == category.empty()) {
    throw ValidationError("localize needs exactly one of --tactile and --category");
  }
  Model model = load_model(config);
  const LossConfig loss = config.loss_config();
  TactileDescriptor descriptor;
  if (!tactile.empty()) {
    require_file(tactile, "tactile input");
    descriptor = tactile_descriptor(model, load_model_input(tactile));
  } else {
    require_file(config.manifest_path(), "manifest");
    const CorpusIndex corpus(config.manifest_path());
    Localizer loc(model, loss, corpus);
    EvalConfig c = config.eval_config();
    c.use_prototype = true;
    descriptor = loc.query("", category, c);
  }

  const ModelInput input = load_model_input(image);
  Raster base;
  if (!config.text("render").empty()) {
    require_file(config.path("render"), "render");
    base = read_netpbm(config.path("render"));
  } else if (const Raster* r = std::get_if<Raster>(&input)) {
    base = *r;
  } else {
    const std::size_t side = config.encoder_config().image_side;
    base = Raster::filled(side, side, 1, 128);
  }
  LocalizeResult result;
  result.saliency = compute_saliency(visual_features(model, input), descriptor, loss,
                                     base.width(), base.height());
  result.saliency.sample_id = image.stem().string();
  const std::filesystem::path out = config.path("out");
  std::filesystem::create_directories(out);
  result.gray_path = out / ("heatmap-" + image.stem().string() + ".pgm");
  result.overlay_path = out / ("overlay-" + image.stem().string() + ".ppm");
  export_heatmap(result.saliency, base, result.gray_path, result.overlay_path);
  return result;
}

GradCheckProblem make_gradcheck_problem(std::uint64_t seed, std::size_t pairs,
                                        const LossConfig& loss) {
  EncoderConfig cfg;
  cfg.image_side = 4;
  cfg.patch_size = 2;
  cfg.backbone_kind = BackboneKind::kFeatureFile;
  cfg.feature_channels = 5;
  cfg.backbone_dim = 4;
  cfg.shared_dim = 3;

  Rng rng(seed, {0x96AD});
  auto uniform = [&](Shape shape, double lo, double hi) {
    std::vector<double> v(shape_size(shape));
    for (double& x : v) x = lo + (hi - lo) * rng.uniform();
    return Tensor(std::move(shape), std::move(v));
  };
  auto random_params = [&]() {
    EncoderParams p;
    p.backbone_weight = uniform({cfg.input_dim(), cfg.backbone_dim}, -1, 1);
    p.backbone_bias = uniform({cfg.backbone_dim}, -0.5, 0.5);
    p.norm_gamma = uniform({cfg.backbone_dim}, 0.5, 1.5);
    p.norm_beta = uniform({cfg.backbone_dim}, -0.5, 0.5);
    p.proj_weight = uniform({cfg.backbone_dim, cfg.shared_dim}, -1, 1);
    p.proj_bias = uniform({cfg.shared_dim}, -0.5, 0.5);
    return p;
  };
  const Encoder visual(kVisualPrefix, cfg);
  const Encoder tactile(kTactilePrefix, cfg);
  GradCheckProblem problem;
  visual.add_params(problem.params, random_params(), true, true);
  tactile.add_params(problem.params, random_params(), true, true);

  const Shape input_shape{cfg.feature_channels, cfg.grid(), cfg.grid()};
  auto inputs = std::make_shared<std::vector<std::pair<Tensor, Tensor>>>();
  for (std::size_t i = 0; i < pairs; ++i) {
    inputs->emplace_back(uniform(input_shape, -1, 1), uniform(input_shape, -1, 1));
  }
  problem.loss = [visual, tactile, inputs, loss](Graph& g, const ParamSet& params) {
    std::vector<Var> t;
    std::vector<Var> v;
    for (const auto& [ti, vi] : *inputs) {
      t.push_back(tactile.forward(g, params, g.constant(ti)));
      v.push_back(visual.forward(g, params, g.constant(vi)));
    }
    return symmetric_infonce(g, batch_similarity_matrix(g, t, v, loss), loss);
  };
  return problem;
}

GradCheckReport run_gradcheck(const RunConfig& config) {
  const double h = config.real("fd_step");
  const double tol = config.real("fd_tol");
  if (!(h > 0.0) || !(tol > 0.0)) throw ValidationError("fd_step and fd_tol must be > 0");
  const std::uint64_t seeds = std::max<std::uint64_t>(1, config.integer("gradcheck_seeds"));
  GradCheckReport worst;
  worst.tolerance = tol;
  for (std::uint64_t k = 0; k < seeds; ++k) {
    const GradCheckProblem p =
        make_gradcheck_problem(derive_seed(config.seed(), {k}), 3, config.loss_config());
    GradCheckReport r = finite_difference_check(p.loss, p.params, h, tol);
    if (k == 0 || r.max_relative_error > worst.max_relative_error) {
      const bool passed = worst.passed && r.passed;
      worst = r;
      worst.passed = passed;
    } else {
      worst.passed = worst.passed && r.passed;
    }
  }
  return worst;
}

}  // namespace tactloc

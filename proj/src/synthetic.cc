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

#include "tactloc/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "tactloc/errors.h"
#include "tactloc/eval_list.h"
#include "tactloc/feature_file.h"
#include "tactloc/manifest.h"
#include "tactloc/mask.h"
#include "tactloc/raster.h"
#include "tactloc/rng.h"
#include "tactloc/touch_instance.h"

namespace tactloc {
namespace {

// Stream tags for derive_seed.
enum : std::uint64_t {
  kSignatureStream = 0x5191,
  kSplitStream,
  kInstanceStream,
  kVisualFrameStream,
  kTactileFrameStream,
  kSceneStream,
  kOutDomainStream,
  kInteractiveStream,
  kShuffleStream,
};

using Vec = std::vector<double>;

Vec unit_vector(Rng& rng, std::size_t d) {
  Vec v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

double abs_cosine(const Vec& a, const Vec& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return std::abs(ab) / std::sqrt(aa * bb);
}

void check_collinear(const std::vector<Vec>& sigs, const char* modality) {
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (std::size_t j = i + 1; j < sigs.size(); ++j) {
      if (abs_cosine(sigs[i], sigs[j]) > 0.99) {
        throw std::runtime_error(std::string(modality) + " signatures " +
                                 std::to_string(i) + " and " + std::to_string(j) +
                                 " collide");
      }
    }
  }
}

// Per-location vectors, filled by a callback, plus isotropic noise.
class MapBuilder {
 public:
  MapBuilder(std::size_t d, std::size_t g) : d_(d), g_(g), data_(d * g * g, 0.0) {}

  void add(std::size_t h, std::size_t w, const Vec& v, double scale) {
    for (std::size_t c = 0; c < d_; ++c) data_[(c * g_ + h) * g_ + w] += scale * v[c];
  }
  void add_everywhere(const Vec& v, double scale) {
    for (std::size_t h = 0; h < g_; ++h) {
      for (std::size_t w = 0; w < g_; ++w) add(h, w, v, scale);
    }
  }
  // Noise vector of expected norm `sigma` at every location.
  void add_noise(Rng& rng, double sigma) {
    if (sigma == 0.0) return;
    const double per = sigma / std::sqrt(static_cast<double>(d_));
    for (double& x : data_) x += per * rng.normal();
  }
  void scale(double s) {
    for (double& x : data_) x *= s;
  }
  void blend(const MapBuilder& other, double weight) {
    for (std::size_t i = 0; i < data_.size(); ++i) {
      data_[i] = (1.0 - weight) * data_[i] + weight * other.data_[i];
    }
  }
  FeatureMap build() const { return FeatureMap(d_, g_, g_, data_); }

 private:
  std::size_t d_;
  std::size_t g_;
  Vec data_;
};

struct InstancePlan {
  std::size_t category = 0;
  std::size_t index = 0;  // global instance number
  bool test = false;
  std::string video_id;
  std::uint64_t start = 0;
  std::string instance_id;
};

// Region labels on the grid, 2 or 3 axis-aligned rectangles tiling it.
std::vector<std::size_t> layout(Rng& rng, std::size_t g, std::size_t regions) {
  const std::size_t lo = g / 4;
  const std::size_t hi = g - g / 4;
  const std::size_t orient = rng.index(2);
  const std::size_t cut = lo + rng.index(hi - lo + 1);
  const std::size_t cut2 = lo + rng.index(hi - lo + 1);
  std::vector<std::size_t> labels(g * g);
  for (std::size_t h = 0; h < g; ++h) {
    for (std::size_t w = 0; w < g; ++w) {
      const std::size_t major = orient == 0 ? w : h;
      const std::size_t minor = orient == 0 ? h : w;
      std::size_t label = major < cut ? 0 : 1;
      if (regions == 3 && label == 1 && minor >= cut2) label = 2;
      labels[h * g + w] = label;
    }
  }
  return labels;
}

// k distinct categories, the first one forced when `first` < K.
std::vector<std::size_t> pick_categories(Rng& rng, std::size_t categories,
                                         std::size_t count, std::size_t first) {
  std::vector<std::size_t> pool;
  for (std::size_t k = 0; k < categories; ++k) {
    if (k != first) pool.push_back(k);
  }
  std::vector<std::size_t> out;
  if (first < categories) out.push_back(first);
  while (out.size() < count) {
    const std::size_t i = rng.index(pool.size());
    out.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

const std::uint8_t kPalette[8][3] = {{178, 34, 34},  {60, 179, 113}, {65, 105, 225},
                                     {192, 192, 192}, {160, 110, 60}, {112, 128, 144},
                                     {238, 214, 175}, {175, 238, 238}};

struct Scene {
  FeatureMap features;
  std::vector<std::size_t> categories;  // per region
  std::vector<MaskImage> masks;         // per region, image resolution
  Raster render;
};

class Generator {
 public:
  Generator(const SyntheticSpec& spec, std::uint64_t seed,
            const std::filesystem::path& dir)
      : spec_(spec), seed_(seed), dir_(dir), sigs_(make_signatures(spec, seed)) {}

  SyntheticCorpus run();

 private:
  Scene make_scene(Rng& rng, std::size_t regions, std::size_t first_category) const;
  void write_map(const std::string& rel, const FeatureMap& map) const {
    save_feature_map(map, dir_ / rel);
  }
  std::string pad(std::size_t v, int width) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, v);
    return buf;
  }

  const SyntheticSpec& spec_;
  std::uint64_t seed_;
  std::filesystem::path dir_;
  SyntheticSignatures sigs_;
};

Scene Generator::make_scene(Rng& rng, std::size_t regions,
                            std::size_t first_category) const {
  const std::size_t g = spec_.grid;
  const std::size_t d = spec_.feature_dim;
  Scene scene;
  scene.categories = pick_categories(rng, spec_.categories, regions, first_category);
  const std::vector<std::size_t> labels = layout(rng, g, regions);
  std::vector<Vec> nuisance;
  for (std::size_t r = 0; r < regions; ++r) nuisance.push_back(unit_vector(rng, d));

  MapBuilder map(d, g);
  for (std::size_t h = 0; h < g; ++h) {
    for (std::size_t w = 0; w < g; ++w) {
      const std::size_t r = labels[h * g + w];
      map.add(h, w, sigs_.visual[scene.categories[r]], 1.0);
      map.add(h, w, nuisance[r], spec_.nuisance);
    }
  }
  map.add_noise(rng, spec_.location_noise);
  scene.features = map.build();

  const std::size_t side = spec_.image_side;
  const std::size_t patch = side / g;
  std::vector<std::uint8_t> pixels(side * side * 3);
  scene.masks.assign(regions, MaskImage(side, side));
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::size_t r = labels[(y / patch) * g + x / patch];
      scene.masks[r].set(x, y, true);
      const std::size_t k = scene.categories[r];
      for (std::size_t c = 0; c < 3; ++c) {
        pixels[(y * side + x) * 3 + c] =
            k < 8 ? kPalette[k][c] : static_cast<std::uint8_t>((37 * k + 91 * c) % 256);
      }
    }
  }
  scene.render = Raster(side, side, 3, std::move(pixels));
  return scene;
}

SyntheticCorpus Generator::run() {
  const std::size_t g = spec_.grid;
  const std::size_t d = spec_.feature_dim;
  const std::size_t t_len = spec_.frames_per_instance;
  for (const char* sub : {"visual", "tactile", "outdomain", "scenes", "masks", "renders"}) {
    std::filesystem::create_directories(dir_ / sub);
  }

  // Instance plan: per category a fixed number of test instances, then videos
  // formed inside each split so no video straddles it.
  std::vector<InstancePlan> plans;
  for (std::size_t k = 0; k < spec_.categories; ++k) {
    const std::size_t n = spec_.instances_per_category;
    std::size_t n_test = 0;
    if (n >= 2) {
      const double want = std::round(spec_.test_fraction * static_cast<double>(n));
      n_test = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, n - 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
      InstancePlan p;
      p.category = k;
      p.index = plans.size();
      p.test = i < n_test;
      plans.push_back(p);
    }
  }
  std::size_t video_counter = 0;
  for (bool test : {false, true}) {
    std::vector<InstancePlan*> group;
    for (InstancePlan& p : plans) {
      if (p.test == test) group.push_back(&p);
    }
    Rng rng(seed_, {kSplitStream, test ? 1u : 0u});
    for (std::size_t i = group.size(); i > 1; --i) {
      std::swap(group[i - 1], group[rng.index(i)]);
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
      const std::size_t slot = i % spec_.instances_per_video;
      if (slot == 0) ++video_counter;
      InstancePlan& p = *group[i];
      p.video_id = "vid" + pad(video_counter, 3);
      p.start = 100 + slot * (t_len + 5);
      p.instance_id = make_instance_id(p.video_id, p.start, p.start + t_len - 1);
    }
  }

  SyntheticCorpus out;
  std::vector<SampleRecord> records;
  std::map<std::size_t, std::vector<const InstancePlan*>> test_by_cat;
  std::map<std::size_t, std::vector<const InstancePlan*>> train_by_cat;
  for (const InstancePlan& p : plans) {
    (p.test ? test_by_cat : train_by_cat)[p.category].push_back(&p);
    (p.test ? out.test_instances : out.train_instances) += 1;

    Rng irng(seed_, {kInstanceStream, p.index});
    const Vec shared = unit_vector(irng, d);
    const std::size_t rh = g / 2 + irng.index(g / 2 + 1);
    const std::size_t rw = g / 2 + irng.index(g / 2 + 1);
    const std::size_t r0 = irng.index(g - rh + 1);
    const std::size_t c0 = irng.index(g - rw + 1);
    // Clutter around the touched surface differs between videos.
    const Vec background = unit_vector(irng, d);

    MapBuilder tactile_base(d, g);
    tactile_base.add_everywhere(sigs_.tactile[p.category], 1.0);
    tactile_base.add_everywhere(shared, spec_.nuisance);
    tactile_base.add_noise(irng, spec_.location_noise);

    for (std::size_t f = 0; f < t_len; ++f) {
      const std::uint64_t frame = p.start + f;
      const std::string sid = p.video_id + "_f" + pad(frame, 4);
      SampleRecord rec;
      rec.sample_id = sid;
      rec.video_id = p.video_id;
      rec.frame_index = frame;
      rec.category = sigs_.names[p.category];
      rec.image_path = "visual/" + sid + ".vtft";
      rec.tactile_path = "tactile/" + sid + ".vtft";
      rec.split = p.test ? "test" : "train";
      records.push_back(rec);

      Rng vrng(seed_, {kVisualFrameStream, p.index, f});
      MapBuilder visual(d, g);
      for (std::size_t h = 0; h < g; ++h) {
        for (std::size_t w = 0; w < g; ++w) {
          if (h >= r0 && h < r0 + rh && w >= c0 && w < c0 + rw) {
            visual.add(h, w, sigs_.visual[p.category], 1.0);
            visual.add(h, w, shared, spec_.nuisance);
          } else {
            visual.add(h, w, background, 1.0);
          }
        }
      }
      visual.add_noise(vrng, spec_.location_noise);
      write_map(rec.image_path, visual.build());

      MapBuilder tactile = tactile_base;
      const bool endpoint = f == 0 || f + 1 == t_len;
      if (endpoint && spec_.endpoint_noise > 0.0) {
        Rng trng(seed_, {kTactileFrameStream, p.index, f});
        MapBuilder noise(d, g);
        noise.add_everywhere(unit_vector(trng, d), 1.0);
        noise.add_noise(trng, spec_.location_noise);
        tactile.blend(noise, spec_.endpoint_noise);
      }
      write_map(*rec.tactile_path, tactile.build());
      ++out.tactile_frames;
    }
  }

  auto query_instance = [&](Rng& rng, std::size_t k) -> std::string {
    const auto& pool = test_by_cat[k].empty() ? train_by_cat[k] : test_by_cat[k];
    return pool[rng.index(pool.size())]->instance_id;
  };
  auto region_count = [&](Rng& rng) -> std::size_t {
    return spec_.categories >= 3 ? 2 + rng.index(2) : 2;
  };

  // Out-domain images: multi-region scenes labeled with one of their regions.
  std::size_t web = 0;
  for (std::size_t k = 0; k < spec_.categories; ++k) {
    for (std::size_t i = 0; i < spec_.out_domain_per_category; ++i, ++web) {
      Rng rng(seed_, {kOutDomainStream, web});
      const Scene scene = make_scene(rng, region_count(rng), k);
      SampleRecord rec;
      rec.sample_id = "web" + pad(web, 4);
      rec.video_id = rec.sample_id;
      rec.frame_index = 0;
      rec.category = sigs_.names[k];
      rec.image_path = "outdomain/" + rec.sample_id + ".vtft";
      rec.split = "train";
      write_map(rec.image_path, scene.features);
      records.push_back(rec);
      ++out.out_domain_images;
    }
  }

  std::vector<EvalEntry> eval;
  for (std::size_t s = 0; s < spec_.scenes; ++s) {
    Rng rng(seed_, {kSceneStream, s});
    const Scene scene = make_scene(rng, region_count(rng), spec_.categories);
    const std::string stem = "scene" + pad(s, 3);
    write_map("scenes/" + stem + ".vtft", scene.features);
    write_netpbm(scene.render, dir_ / "renders" / (stem + ".ppm"));
    for (std::size_t r = 0; r < scene.categories.size(); ++r) {
      const std::string& name = sigs_.names[scene.categories[r]];
      EvalEntry e;
      e.sample_id = stem + "_" + name;
      e.image_path = "scenes/" + stem + ".vtft";
      e.category = name;
      e.mask_path = "masks/" + stem + "_" + name + ".pgm";
      e.instance_id = query_instance(rng, scene.categories[r]);
      e.render_path = "renders/" + stem + ".ppm";
      save_mask(scene.masks[r], dir_ / e.mask_path);
      eval.push_back(std::move(e));
    }
    ++out.scenes;
  }

  std::vector<InteractiveEntry> interactive;
  for (std::size_t s = 0; s < spec_.interactive_scenes; ++s) {
    Rng rng(seed_, {kInteractiveStream, s});
    const Scene scene = make_scene(rng, 2, spec_.categories);
    const std::string stem = "pair" + pad(s, 3);
    write_map("scenes/" + stem + ".vtft", scene.features);
    write_netpbm(scene.render, dir_ / "renders" / (stem + ".ppm"));
    InteractiveEntry e;
    e.sample_id = stem;
    e.image_path = "scenes/" + stem + ".vtft";
    e.render_path = "renders/" + stem + ".ppm";
    e.category = sigs_.names[scene.categories[0]];
    e.mask_path = "masks/" + stem + "_a.pgm";
    e.instance_id = query_instance(rng, scene.categories[0]);
    e.category2 = sigs_.names[scene.categories[1]];
    e.mask2_path = "masks/" + stem + "_b.pgm";
    e.instance2_id = query_instance(rng, scene.categories[1]);
    save_mask(scene.masks[0], dir_ / e.mask_path);
    save_mask(scene.masks[1], dir_ / e.mask2_path);
    interactive.push_back(std::move(e));
  }

  Rng shuffle(seed_, {kShuffleStream});
  for (std::size_t i = records.size(); i > 1; --i) {
    std::swap(records[i - 1], records[shuffle.index(i)]);
  }
  out.manifest = dir_ / "manifest.tsv";
  out.eval_list = dir_ / "eval.tsv";
  out.interactive_list = dir_ / "interactive.tsv";
  write_manifest(out.manifest, records, sigs_.names);
  write_file_bytes(out.eval_list, format_eval_list(eval));
  write_file_bytes(out.interactive_list, format_interactive_list(interactive));
  out.eval_samples = eval.size();
  out.interactive_samples = interactive.size();
  return out;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (categories < 2) throw ValidationError("synthetic corpus needs at least 2 categories");
  if (instances_per_category == 0) throw ValidationError("instances_per_category must be >= 1");
  if (frames_per_instance == 0) throw ValidationError("frames_per_instance must be >= 1");
  if (instances_per_video == 0) throw ValidationError("instances_per_video must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test_fraction must lie in (0, 1)");
  }
  if (grid < 4) throw ValidationError("synthetic grid must be >= 4");
  if (feature_dim < 2) throw ValidationError("feature_dim must be >= 2");
  if (image_side == 0 || image_side % grid != 0) {
    throw ValidationError("image side must be a positive multiple of the grid");
  }
  if (!(endpoint_noise >= 0.0 && endpoint_noise <= 1.0)) {
    throw ValidationError("endpoint_noise must lie in [0, 1]");
  }
  if (!(nuisance >= 0.0) || !(location_noise >= 0.0)) {
    throw ValidationError("noise levels must be >= 0");
  }
}

std::vector<std::string> synthetic_category_names(std::size_t count) {
  static const char* kNames[8] = {"brick", "grass", "fabric", "metal",
                                  "wood",  "rock",  "sand",   "glass"};
  std::vector<std::string> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(k < 8 ? kNames[k] : "material" + std::to_string(k));
  }
  return out;
}

SyntheticSignatures make_signatures(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  SyntheticSignatures s;
  s.names = synthetic_category_names(spec.categories);
  Rng rng(seed, {kSignatureStream});
  for (std::size_t k = 0; k < spec.categories; ++k) {
    s.visual.push_back(unit_vector(rng, spec.feature_dim));
    s.tactile.push_back(unit_vector(rng, spec.feature_dim));
  }
  check_collinear(s.tactile, "tactile");
  check_collinear(s.visual, "visual");
  return s;
}

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec,
                                          std::uint64_t seed,
                                          const std::filesystem::path& dir) {
  spec.validate();
  Generator gen(spec, seed, dir);
  return gen.run();
}

}  // namespace tactloc

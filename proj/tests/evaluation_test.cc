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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "tactloc/errors.h"
#include "tactloc/evaluate.h"
#include "tactloc/heatmap.h"
#include "tactloc/metrics.h"
#include "tactloc/raster.h"
#include "tactloc/report.h"
#include "tactloc/saliency.h"
#include "test_util.h"

namespace tactloc {
namespace {

using testing::random_values;
using testing::TempDir;

MaskImage random_mask(Rng& rng, std::size_t w, std::size_t h, double p = 0.4) {
  MaskImage m(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) m.set(x, y, rng.uniform() < p);
  }
  return m;
}

MaskImage rect_mask(std::size_t w, std::size_t h, std::size_t x0, std::size_t y0, std::size_t x1,
                    std::size_t y1) {
  MaskImage m(w, h);
  for (std::size_t y = y0; y < y1; ++y) {
    for (std::size_t x = x0; x < x1; ++x) m.set(x, y, true);
  }
  return m;
}

SaliencyMap map_of(std::size_t w, std::size_t h, std::vector<double> s) {
  SaliencyMap m;
  m.width = w;
  m.height = h;
  m.scores = std::move(s);
  return m;
}

// Precision at each positive's rank, counted pixel by pixel.
double ap_oracle(const std::vector<double>& s, const MaskImage& gt) {
  long double total = 0.0L;
  std::size_t positives = 0;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (!gt[p]) continue;
    ++positives;
    std::size_t rank = 1, hits = 1;
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (q == p) continue;
      if (s[q] > s[p] || (s[q] == s[p] && q < p)) {
        ++rank;
        hits += gt[q] ? 1 : 0;
      }
    }
    total += static_cast<long double>(hits) / static_cast<long double>(rank);
  }
  return static_cast<double>(total / static_cast<long double>(positives));
}

double iou_oracle(const MaskImage& a, const MaskImage& b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    inter += a[i] && b[i];
    uni += a[i] || b[i];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

TEST(Upsample, AlignCornersThirds) {
  const auto out = upsample_bilinear(Tensor({2, 2}, {0, 1, 0, 1}), 4, 2);
  const std::vector<double> row = {0.0, 1.0 / 3, 2.0 / 3, 1.0};
  for (std::size_t y = 0; y < 2; ++y) {
    for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(out[y * 4 + x], row[x], 1e-15);
  }
}

TEST(Upsample, MatchesBilinearFormula) {
  Rng rng(1);
  const Tensor g({3, 3}, random_values(rng, 9));
  const auto out = upsample_bilinear(g, 9, 9);
  for (std::size_t y = 0; y < 9; ++y) {
    for (std::size_t x = 0; x < 9; ++x) {
      const double sy = y * 2.0 / 8.0, sx = x * 2.0 / 8.0;
      const std::size_t y0 = std::min<std::size_t>(static_cast<std::size_t>(sy), 1);
      const std::size_t x0 = std::min<std::size_t>(static_cast<std::size_t>(sx), 1);
      const double fy = sy - y0, fx = sx - x0;
      auto at = [&](std::size_t r, std::size_t c) { return g[r * 3 + c]; };
      const double want = (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x0 + 1)) +
                          fy * ((1 - fx) * at(y0 + 1, x0) + fx * at(y0 + 1, x0 + 1));
      EXPECT_NEAR(out[y * 9 + x], want, 1e-12);
    }
  }
}

TEST(Upsample, SingletonGridBroadcasts) {
  const auto out = upsample_bilinear(Tensor({1, 1}, {0.3}), 3, 2);
  for (double v : out) EXPECT_EQ(v, 0.3);
}

TEST(Saliency, ConstantMapIsAllZero) {
  const FeatureMap f(2, 2, 2, {1, 1, 1, 1, 0, 0, 0, 0});
  const SaliencyMap s = compute_saliency(f, {{1.0, 0.5}}, {}, 8, 8);
  EXPECT_EQ(s.width, 8u);
  for (double v : s.scores) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(normalize_min_max({2.0, 2.0}) == (std::vector<double>{0.0, 0.0}));
}

TEST(Saliency, ScoresInUnitIntervalWithBothEnds) {
  Rng rng(2);
  const FeatureMap f = testing::random_feature_map(rng, 4, 3, 3);
  const SaliencyMap s = compute_saliency(f, {random_values(rng, 4)}, {}, 12, 12);
  double lo = 1, hi = 0;
  for (double v : s.scores) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);
}

TEST(Saliency, AffineInvariantNormalization) {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::vector<double> v = random_values(rng, 50);
    const double a = 0.01 + 10 * rng.uniform(), b = -5 + 10 * rng.uniform();
    std::vector<double> w;
    for (double x : v) w.push_back(a * x + b);
    const auto nv = normalize_min_max(v), nw = normalize_min_max(w);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(nv[i], nw[i], 1e-12);
  }
}

TEST(Saliency, RawDescriptorScalingLeavesSaliencyUnchanged) {
  Rng rng(4);
  const FeatureMap f = testing::random_feature_map(rng, 4, 3, 3);
  const std::vector<double> d = random_values(rng, 4);
  std::vector<double> d3 = d;
  for (double& x : d3) x *= 3.0;
  LossConfig raw;
  raw.cosine = false;
  const SaliencyMap a = compute_saliency(f, {d}, raw, 6, 6);
  const SaliencyMap b = compute_saliency(f, {d3}, raw, 6, 6);
  for (std::size_t i = 0; i < a.scores.size(); ++i) EXPECT_NEAR(a.scores[i], b.scores[i], 1e-12);
  // Nudge away from exact ties with the threshold before comparing masks.
  MaskImage ma = binarize(a, 0.5 + 1e-9), mb = binarize(b, 0.5 + 1e-9);
  EXPECT_EQ(ma, mb);
}

TEST(Binarize, ThresholdIsInclusive) {
  const MaskImage m = binarize(map_of(3, 1, {0.49, 0.5, 0.9}), 0.5);
  EXPECT_FALSE(m.at(0, 0));
  EXPECT_TRUE(m.at(1, 0));
  EXPECT_TRUE(m.at(2, 0));
}

TEST(RegionIou, Examples) {
  const MaskImage a = rect_mask(4, 4, 0, 0, 4, 2);  // 8 px
  MaskImage b(4, 4);
  b.set(0, 0, true);
  b.set(1, 0, true);
  b.set(0, 3, true);
  b.set(1, 3, true);  // 4 px, 2 overlapping
  EXPECT_DOUBLE_EQ(region_iou(a, b), 0.2);
  EXPECT_EQ(region_iou(a, a), 1.0);
  EXPECT_EQ(region_iou(rect_mask(4, 4, 0, 0, 2, 2), rect_mask(4, 4, 2, 2, 4, 4)), 0.0);
  EXPECT_EQ(region_iou(MaskImage(3, 3), MaskImage(3, 3)), 1.0);
  EXPECT_THROW(region_iou(MaskImage(3, 3), MaskImage(3, 4)), std::invalid_argument);
}

TEST(RegionIou, MatchesOracleAndIsSymmetric) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 1 + rng.index(8), h = 1 + rng.index(8);
    const MaskImage a = random_mask(rng, w, h), b = random_mask(rng, w, h);
    EXPECT_EQ(region_iou(a, b), iou_oracle(a, b));
    EXPECT_EQ(region_iou(a, b), region_iou(b, a));
    EXPECT_GE(region_iou(a, b), 0.0);
    EXPECT_LE(region_iou(a, b), 1.0);
    if (a.count() > 0) {
      EXPECT_EQ(region_iou(a, a), 1.0);
    }
    if (a != b && (a.count() > 0 || b.count() > 0)) {
      EXPECT_LT(region_iou(a, b), 1.0);
    }
  }
}

TEST(PixelAp, HandEnumeratedExample) {
  const MaskImage gt(4, 1, {1, 0, 1, 0});
  const std::vector<double> s = {0.9, 0.8, 0.7, 0.6};
  EXPECT_EQ(pixel_average_precision(s, gt), 5.0 / 6.0);
}

TEST(PixelAp, PerfectRankingAndFullGroundTruth) {
  const MaskImage gt(3, 2, {0, 1, 0, 1, 1, 0});
  EXPECT_EQ(pixel_average_precision(std::vector<double>{0, 1, 0, 0.9, 0.8, 0.1}, gt), 1.0);
  const MaskImage full(2, 2, {1, 1, 1, 1});
  EXPECT_EQ(pixel_average_precision(std::vector<double>{0.3, 0.1, 0.9, 0.0}, full), 1.0);
  EXPECT_THROW(pixel_average_precision(std::vector<double>{0.1}, MaskImage(1, 1)),
               std::invalid_argument);
}

TEST(PixelAp, MatchesBruteForceOracle) {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const std::size_t w = 1 + rng.index(8), h = 1 + rng.index(8);
    MaskImage gt = random_mask(rng, w, h);
    if (gt.count() == 0) gt.set(0, 0, true);
    std::vector<double> s(w * h);
    // Coarse scores so ties are common.
    for (double& x : s) x = std::floor(4 * rng.uniform()) / 4;
    EXPECT_EQ(pixel_average_precision(s, gt), ap_oracle(s, gt));
  }
}

TEST(PixelAp, InvariantUnderMonotoneTransform) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    MaskImage gt = random_mask(rng, 6, 5);
    if (gt.count() == 0) gt.set(1, 1, true);
    std::vector<double> s = random_values(rng, 30, 0, 1), e;
    for (double x : s) e.push_back(std::exp(3 * x) - 7);
    EXPECT_EQ(pixel_average_precision(s, gt), pixel_average_precision(e, gt));
    EXPECT_EQ(pixel_average_precision(s, gt, ApFlavor::kInterpolated),
              pixel_average_precision(e, gt, ApFlavor::kInterpolated));
  }
}

TEST(PixelAp, InterpolatedFlavor) {
  const MaskImage gt(4, 1, {0, 1, 1, 0});
  const std::vector<double> s = {0.9, 0.8, 0.7, 0.6};
  EXPECT_DOUBLE_EQ(pixel_average_precision(s, gt), (0.5 + 2.0 / 3) / 2);
  EXPECT_DOUBLE_EQ(pixel_average_precision(s, gt, ApFlavor::kInterpolated), 2.0 / 3);
  EXPECT_EQ(parse_ap_flavor("interpolated"), ApFlavor::kInterpolated);
  EXPECT_THROW(parse_ap_flavor("voc"), ValidationError);
}

TEST(Baselines, SquareAndCircle) {
  EXPECT_EQ(baseline_mask(BaselineKind::kSquare, 224, 224).count(), 50176u);
  const double area = std::numbers::pi * 112 * 112;
  const double circle = static_cast<double>(baseline_mask(BaselineKind::kCircle, 224, 224).count());
  EXPECT_LT(std::abs(circle - area) / area, 0.005);
  const MaskImage c = baseline_mask(BaselineKind::kCircle, 5, 5);
  EXPECT_TRUE(c.at(2, 2));
  EXPECT_TRUE(c.at(0, 2));
  EXPECT_FALSE(c.at(0, 0));
}

std::vector<LocalizationSample> random_dataset(Rng& rng, std::size_t n, std::size_t side) {
  std::vector<LocalizationSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    MaskImage gt = random_mask(rng, side, side, 0.2 + 0.6 * rng.uniform());
    if (gt.count() == 0) gt.set(0, 0, true);
    out.push_back({"s" + std::to_string(i), i % 2 ? "brick" : "grass", "", gt});
  }
  return out;
}

TEST(Evaluate, OracleModelScoresPerfectly) {
  Rng rng(8);
  const auto data = random_dataset(rng, 6, 7);
  const EvalReport r = evaluate_localization(
      data, [](const LocalizationSample& s) { return saliency_from_mask(s.gt); }, {});
  EXPECT_EQ(r.map, 100.0);
  EXPECT_EQ(r.miou, 100.0);
  EXPECT_EQ(r.categories.at("brick").samples, 3u);
}

TEST(Evaluate, ZeroSaliencyHasZeroIou) {
  Rng rng(9);
  const auto data = random_dataset(rng, 4, 5);
  const EvalReport r = evaluate_localization(
      data, [](const LocalizationSample&) { return map_of(5, 5, std::vector<double>(25, 0.0)); },
      {});
  // Threshold 0.5 over an all-zero map gives an empty prediction.
  EXPECT_EQ(r.miou, 0.0);
}

TEST(Evaluate, ComposesPerSampleMetrics) {
  Rng rng(10);
  const auto data = random_dataset(rng, 5, 6);
  std::vector<SaliencyMap> maps;
  for (int i = 0; i < 5; ++i) maps.push_back(map_of(6, 6, random_values(rng, 36, 0, 1)));
  EvalConfig cfg;
  cfg.threshold = 0.4;
  std::size_t k = 0;
  const EvalReport r =
      evaluate_localization(data, [&](const LocalizationSample&) { return maps[k++]; }, cfg);
  double ap = 0, iou = 0;
  for (int i = 0; i < 5; ++i) {
    ap += ap_oracle(maps[i].scores, data[i].gt);
    MaskImage pred(6, 6);
    for (std::size_t p = 0; p < 36; ++p) pred.set(p % 6, p / 6, maps[i].scores[p] >= 0.4);
    iou += iou_oracle(pred, data[i].gt);
  }
  EXPECT_NEAR(r.map, 100 * ap / 5, 1e-12);
  EXPECT_NEAR(r.miou, 100 * iou / 5, 1e-12);
  EXPECT_EQ(r.samples.size(), 5u);
}

TEST(Evaluate, FullSquareIouIsCoverage) {
  Rng rng(11);
  const auto data = random_dataset(rng, 9, 8);
  const EvalReport r = evaluate_localization(
      data,
      [](const LocalizationSample& s) {
        return saliency_from_mask(baseline_mask(BaselineKind::kSquare, s.gt.width(), s.gt.height()));
      },
      {});
  double cover = 0;
  for (const auto& s : data) cover += static_cast<double>(s.gt.count()) / 64.0;
  EXPECT_NEAR(r.miou, 100 * cover / 9, 1e-9);
}

TEST(Evaluate, RejectsEmptyGroundTruthAndDataset) {
  std::vector<LocalizationSample> data = {{"s", "c", "", MaskImage(2, 2)}};
  const SaliencyFn fn = [](const LocalizationSample& s) { return saliency_from_mask(s.gt); };
  EXPECT_THROW(evaluate_localization(data, fn, {}), std::invalid_argument);
  EXPECT_THROW(evaluate_localization({}, fn, {}), std::invalid_argument);
}

InteractiveSample pair_sample(const std::string& id) {
  return {id, "a", "", rect_mask(4, 4, 0, 0, 2, 4), "b", "", rect_mask(4, 4, 2, 0, 4, 4)};
}

TEST(Interactive, PerfectAndConjunction) {
  const std::vector<InteractiveSample> one = {pair_sample("x")};
  const InteractiveResult perfect = evaluate_interactive(
      one,
      [](const InteractiveSample& s, int which) { return saliency_from_mask(which == 0 ? s.gt_a : s.gt_b); },
      {});
  EXPECT_EQ(perfect.iiou, 100.0);
  const InteractiveResult half = evaluate_interactive(
      one,
      [](const InteractiveSample& s, int which) {
        if (which == 1) return saliency_from_mask(s.gt_b);
        // 2 of 8 gt pixels plus 3 outside: IoU 2/11.
        MaskImage m(4, 4);
        m.set(0, 0, true);
        m.set(1, 0, true);
        m.set(2, 0, true);
        m.set(3, 0, true);
        m.set(3, 1, true);
        return saliency_from_mask(m);
      },
      {});
  EXPECT_LT(half.ious[0].first, 0.5);
  EXPECT_EQ(half.ious[0].second, 1.0);
  EXPECT_EQ(half.iiou, 0.0);
}

TEST(Interactive, CountsPlantedSuccesses) {
  std::vector<InteractiveSample> data;
  for (int i = 0; i < 10; ++i) data.push_back(pair_sample("s" + std::to_string(i)));
  const std::vector<bool> planted = {1, 0, 1, 1, 0, 1, 1, 1, 0, 1};
  const InteractiveResult r = evaluate_interactive(
      data,
      [&](const InteractiveSample& s, int which) {
        const std::size_t i = std::stoul(s.sample_id.substr(1));
        if (!planted[i] && which == 1) return saliency_from_mask(s.gt_a);  // wrong region
        return saliency_from_mask(which == 0 ? s.gt_a : s.gt_b);
      },
      {});
  EXPECT_EQ(r.successes, 7u);
  EXPECT_EQ(r.iiou, 70.0);
  EXPECT_NEAR(std::fmod(r.iiou, 100.0 / 10), 0.0, 1e-12);
}

TEST(Robustness, SingleFrameInstancesGiveIdenticalReports) {
  Rng rng(12);
  const auto data = random_dataset(rng, 4, 5);
  std::vector<SaliencyMap> maps;
  for (int i = 0; i < 4; ++i) maps.push_back(map_of(5, 5, random_values(rng, 25, 0, 1)));
  const auto reports = robustness_report(
      data,
      [&](const LocalizationSample& s, FramePosition) { return maps[std::stoul(s.sample_id.substr(1))]; },
      {});
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_TRUE(reports.contains(FramePosition::kStart));
  EXPECT_TRUE(reports.contains(FramePosition::kMiddle));
  EXPECT_TRUE(reports.contains(FramePosition::kEnd));
  EXPECT_EQ(reports.at(FramePosition::kStart).map, reports.at(FramePosition::kEnd).map);
  EXPECT_EQ(reports.at(FramePosition::kStart).miou, reports.at(FramePosition::kMiddle).miou);
}

TEST(DescriptorAt, MiddleAveragesInteriorFrames) {
  TouchInstance t;
  t.members = {"a", "b", "c", "d", "e"};
  t.start = 0;
  t.end = 4;
  const FrameDescriber describe = [](const TouchInstance&, std::size_t k) {
    return TactileDescriptor{{static_cast<double>(k), 1.0}};
  };
  EXPECT_EQ(descriptor_at(t, FramePosition::kMiddle, describe).values, (std::vector<double>{2.0, 1.0}));
  EXPECT_EQ(descriptor_at(t, FramePosition::kEnd, describe).values, (std::vector<double>{4.0, 1.0}));
}

TEST(Heatmap, ZeroSaliencyAndUnitPixel) {
  std::vector<std::uint8_t> px = {10, 20, 30, 201, 100, 7};
  const Raster base(2, 1, 3, px);
  const Raster gray = heatmap_gray(map_of(2, 1, {0.0, 0.0}));
  EXPECT_EQ(gray.samples(), (std::vector<std::uint8_t>{0, 0}));
  const Raster zero = heatmap_overlay(map_of(2, 1, {0.0, 0.0}), base);
  for (std::size_t i = 0; i < px.size(); ++i) {
    EXPECT_EQ(zero.samples()[i], static_cast<std::uint8_t>(std::round(0.5 * px[i])));
  }
  const Raster unit = heatmap_overlay(map_of(2, 1, {0.0, 1.0}), base);
  EXPECT_EQ(unit.at(1, 0, 0), static_cast<std::uint8_t>(std::round(0.5 * 201 + 127.5)));
  EXPECT_EQ(unit.at(1, 0, 1), 50);
  EXPECT_EQ(heatmap_gray(map_of(2, 1, {0.0, 1.0})).at(1, 0), 255);
}

TEST(Heatmap, GrayscaleBaseIsReplicated) {
  const Raster base(1, 1, 1, {100});
  const Raster o = heatmap_overlay(map_of(1, 1, {0.5}), base);
  EXPECT_EQ(o.channels(), 3u);
  EXPECT_EQ(o.at(0, 0, 0), static_cast<std::uint8_t>(std::round(50 + 0.5 * 0.5 * 255)));
  EXPECT_EQ(o.at(0, 0, 2), 50);
}

TEST(Heatmap, ExportIsByteStable) {
  TempDir dir("heatmap");
  Rng rng(13);
  const SaliencyMap s = map_of(6, 4, random_values(rng, 24, 0, 1));
  const Raster base = Raster::filled(6, 4, 3, 90);
  export_heatmap(s, base, dir / "a.pgm", dir / "a.ppm");
  export_heatmap(s, base, dir / "b.pgm", dir / "b.ppm");
  EXPECT_EQ(read_file_bytes(dir / "a.pgm"), read_file_bytes(dir / "b.pgm"));
  EXPECT_EQ(read_file_bytes(dir / "a.ppm"), read_file_bytes(dir / "b.ppm"));
  EXPECT_THROW(heatmap_overlay(s, Raster::filled(5, 4, 3, 0)), std::invalid_argument);
}

TEST(Report, RecordsCarryMetricsAndSettings) {
  EvalReport r;
  r.label = "eval";
  r.seed = 7;
  r.sample_count = 2;
  r.map = 91.5;
  r.miou = 80.25;
  r.categories["brick"] = {2, 91.5, 80.25};
  const std::string text = format_report(r);
  EXPECT_NE(text.find("label=eval"), std::string::npos);
  EXPECT_NE(text.find("seed=7"), std::string::npos);
  EXPECT_NE(text.find("mIoU="), std::string::npos);
  EXPECT_NE(text.find("category=brick"), std::string::npos);
  EXPECT_EQ(text.find("IIoU"), std::string::npos);
  r.iiou = 70.0;
  EXPECT_NE(format_report(r).find("IIoU="), std::string::npos);
}

}  // namespace
}  // namespace tactloc

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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tactloc/alignment.h"
#include "tactloc/autodiff.h"
#include "tactloc/errors.h"
#include "tactloc/param_set.h"
#include "tactloc/rng.h"
#include "test_util.h"

namespace tactloc {
namespace {

using testing::random_feature_map;
using testing::random_tensor;
using testing::random_values;

LossConfig raw_mode() {
  LossConfig c;
  c.cosine = false;
  return c;
}

// Explicit-loop references.
std::vector<double> mean_oracle(const FeatureMap& f) {
  std::vector<double> out(f.channels(), 0.0);
  for (std::size_t c = 0; c < f.channels(); ++c) {
    for (std::size_t h = 0; h < f.height(); ++h) {
      for (std::size_t w = 0; w < f.width(); ++w) out[c] += f.at(c, h, w);
    }
    out[c] /= static_cast<double>(f.height() * f.width());
  }
  return out;
}

std::vector<double> map_oracle(const std::vector<double>& d, const FeatureMap& f, bool cosine) {
  double dn = 0.0;
  for (double x : d) dn += x * x;
  dn = std::sqrt(dn);
  std::vector<double> out;
  for (std::size_t h = 0; h < f.height(); ++h) {
    for (std::size_t w = 0; w < f.width(); ++w) {
      double ip = 0.0, vn = 0.0;
      for (std::size_t c = 0; c < f.channels(); ++c) {
        ip += d[c] * f.at(c, h, w);
        vn += f.at(c, h, w) * f.at(c, h, w);
      }
      vn = std::sqrt(vn);
      if (cosine) ip = (dn == 0.0 || vn == 0.0) ? 0.0 : ip / (dn * vn);
      out.push_back(ip);
    }
  }
  return out;
}

TEST(Aggregate, MatchesLoopOracle) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const FeatureMap f = random_feature_map(rng, 1 + rng.index(6), 1 + rng.index(5), 1 + rng.index(5));
    const TactileDescriptor d = aggregate_tactile(f);
    const std::vector<double> want = mean_oracle(f);
    ASSERT_EQ(d.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(d.values[i], want[i], 1e-12);
  }
}

TEST(Aggregate, IsLinear) {
  Rng rng(2);
  const FeatureMap a = random_feature_map(rng, 4, 3, 3);
  const FeatureMap b = random_feature_map(rng, 4, 3, 3);
  const double alpha = 0.7, beta = -1.3;
  std::vector<double> mix(a.tensor().size());
  for (std::size_t i = 0; i < mix.size(); ++i) {
    mix[i] = alpha * a.tensor()[i] + beta * b.tensor()[i];
  }
  const auto m = aggregate_tactile(FeatureMap(4, 3, 3, mix)).values;
  const auto ma = aggregate_tactile(a).values, mb = aggregate_tactile(b).values;
  for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(m[c], alpha * ma[c] + beta * mb[c], 1e-12);
}

TEST(SimilarityMap, MatchesLoopOracleInBothModes) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t c = 1 + rng.index(6);
    const FeatureMap f = random_feature_map(rng, c, 1 + rng.index(5), 1 + rng.index(5));
    const TactileDescriptor d{random_values(rng, c)};
    for (bool cosine : {true, false}) {
      LossConfig cfg;
      cfg.cosine = cosine;
      const SimilarityMapGrid m = similarity_map(d, f, cfg);
      const std::vector<double> want = map_oracle(d.values, f, cosine);
      ASSERT_EQ(m.values.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(m.values[i], want[i], 1e-12);
      const SimilarityPeak p = similarity_score(m);
      const auto it = std::max_element(want.begin(), want.end());
      EXPECT_NEAR(p.value, *it, 1e-12);
      EXPECT_EQ(p.row * f.width() + p.col, static_cast<std::size_t>(it - want.begin()));
    }
  }
}

TEST(SimilarityMap, ZeroVectorsGiveZeroInCosineMode) {
  const FeatureMap f(2, 1, 2, {0.0, 1.0, 0.0, 1.0});
  const SimilarityMapGrid m = similarity_map({{1.0, 0.0}}, f, {});
  EXPECT_EQ(m.values[0], 0.0);
  const SimilarityMapGrid z = similarity_map({{0.0, 0.0}}, f, {});
  for (double v : z.values.values()) EXPECT_EQ(v, 0.0);
}

TEST(SimilarityMap, ChannelMismatchThrows) {
  const FeatureMap f(3, 2, 2, std::vector<double>(12, 1.0));
  EXPECT_THROW(similarity_map({{1.0, 2.0}}, f, {}), std::invalid_argument);
}

TEST(SimilarityMap, DescriptorScalingProperties) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const FeatureMap f = random_feature_map(rng, 5, 4, 4);
    const TactileDescriptor d{random_values(rng, 5)};
    const double lambda = 0.1 + 10.0 * rng.uniform();
    TactileDescriptor scaled = d;
    for (double& x : scaled.values) x *= lambda;
    const auto raw_a = similarity_map(d, f, raw_mode()), raw_b = similarity_map(scaled, f, raw_mode());
    for (std::size_t i = 0; i < raw_a.values.size(); ++i) {
      EXPECT_NEAR(raw_b.values[i], lambda * raw_a.values[i], 1e-12);
    }
    const auto cos_a = similarity_map(d, f, {}), cos_b = similarity_map(scaled, f, {});
    for (std::size_t i = 0; i < cos_a.values.size(); ++i) {
      EXPECT_NEAR(cos_b.values[i], cos_a.values[i], 1e-12);
    }
    const SimilarityPeak pa = similarity_score(raw_a), pb = similarity_score(raw_b);
    EXPECT_EQ(pa.row, pb.row);
    EXPECT_EQ(pa.col, pb.col);
    const SimilarityPeak ca = similarity_score(cos_a), cb = similarity_score(cos_b);
    EXPECT_EQ(ca.row, cb.row);
    EXPECT_EQ(ca.col, cb.col);
  }
}

TEST(SimilarityScore, FirstMaximumInRowMajorOrderWins) {
  const SimilarityPeak p = similarity_score(Tensor({2, 3}, {0.1, 0.9, 0.2, 0.9, 0.0, 0.9}));
  EXPECT_EQ(p.value, 0.9);
  EXPECT_EQ(p.row, 0u);
  EXPECT_EQ(p.col, 1u);
}

TEST(SimilarityScore, DominatesEveryEntry) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Tensor m = random_tensor(rng, {3, 4});
    const SimilarityPeak p = similarity_score(m);
    bool hit = false;
    for (double v : m.values()) {
      EXPECT_GE(p.value, v);
      hit = hit || v == p.value;
    }
    EXPECT_TRUE(hit);
  }
}

TEST(BatchMatrix, IdenticalUnitFeaturesGiveUnitDiagonal) {
  std::vector<FeatureMap> maps;
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    std::vector<double> u = random_values(rng, 4);
    std::vector<double> data;
    for (std::size_t c = 0; c < 4; ++c) data.insert(data.end(), 4, u[c]);
    maps.emplace_back(4, 2, 2, data);
  }
  const Tensor s = batch_similarity_matrix(maps, maps, {});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i * 3 + i], 1.0, 1e-12);
}

TEST(BatchMatrix, ComposesTheThreeOperations) {
  Rng rng(7);
  std::vector<FeatureMap> t, v;
  for (int i = 0; i < 3; ++i) {
    t.push_back(random_feature_map(rng, 4, 3, 3));
    v.push_back(random_feature_map(rng, 4, 2, 5));
  }
  for (const LossConfig& cfg : {LossConfig{}, raw_mode()}) {
    const Tensor s = batch_similarity_matrix(t, v, cfg);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const auto m = map_oracle(mean_oracle(t[i]), v[j], cfg.cosine);
        EXPECT_NEAR(s[i * 3 + j], *std::max_element(m.begin(), m.end()), 1e-12);
      }
    }
  }
}

TEST(InfoNce, SingletonIsExactlyZero) {
  EXPECT_EQ(symmetric_infonce(Tensor({1, 1}, {0.37}), {}), 0.0);
}

TEST(InfoNce, UniformPairIsLn2) {
  for (double tau : {0.07, 1.0, 3.0}) {
    LossConfig c;
    c.temperature = tau;
    EXPECT_NEAR(symmetric_infonce(Tensor({2, 2}, {0.4, 0.4, 0.4, 0.4}), c), std::log(2.0), 1e-12);
  }
}

TEST(InfoNce, MatchesHighPrecisionReference) {
  // 50-digit evaluation of both directional cross-entropies, tau = 0.07.
  const Tensor s({3, 3}, {0.31, -0.12, 0.57, 0.08, 0.66, -0.41, -0.25, 0.19, 0.44});
  EXPECT_NEAR(symmetric_infonce(s, {}), 0.9678235307937295744, 1e-10);
}

TEST(InfoNce, PermutationAndShiftInvariance) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(6);
    const Tensor s = random_tensor(rng, {n, n});
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<double> permuted(n * n), shifted(n * n);
    const double shift = -5.0 + 10.0 * rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        permuted[i * n + j] = s[perm[i] * n + perm[j]];
        shifted[i * n + j] = s[i * n + j] + shift;
      }
    }
    const double base = symmetric_infonce(s, {});
    EXPECT_NEAR(symmetric_infonce(Tensor({n, n}, permuted), {}), base, 1e-12);
    EXPECT_NEAR(symmetric_infonce(Tensor({n, n}, shifted), {}), base, 1e-10);
    EXPECT_GE(base, 0.0);
  }
}

TEST(InfoNce, DecreasesAsDiagonalMarginGrows) {
  double prev = INFINITY;
  for (double margin = 0.0; margin <= 1.0; margin += 0.1) {
    const Tensor s({3, 3}, {margin, 0, 0, 0, margin, 0, 0, 0, margin});
    const double loss = symmetric_infonce(s, {});
    EXPECT_LT(loss, prev);
    EXPECT_GE(loss, 0.0);
    prev = loss;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(InfoNce, RejectsBadTemperature) {
  LossConfig c;
  c.temperature = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(GraphForms, AgreeWithValueForms) {
  Rng rng(9);
  std::vector<FeatureMap> t, v;
  Graph g;
  std::vector<Var> tv, vv;
  for (int i = 0; i < 4; ++i) {
    t.push_back(random_feature_map(rng, 3, 2, 2));
    v.push_back(random_feature_map(rng, 3, 3, 2));
    tv.push_back(g.constant(t.back().tensor()));
    vv.push_back(g.constant(v.back().tensor()));
  }
  const Var s = batch_similarity_matrix(g, tv, vv, {});
  const Tensor want = batch_similarity_matrix(t, v, {});
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(g.value(s)[i], want[i], 1e-14);
  const Var loss = symmetric_infonce(g, s, {});
  EXPECT_NEAR(g.value(loss).item(), symmetric_infonce(want, {}), 1e-14);
}

TEST(GraphForms, MaxPoolRoutesGradientToFirstMaximum) {
  ParamSet p;
  p.add("m", Tensor({2, 2}, {0.5, 0.9, 0.9, 0.1}), true);
  Graph g;
  const Var out = max_pool(g, g.parameter(p, "m"));
  const auto grads = reverse_mode_gradients(g, out, p);
  EXPECT_EQ(grads.at("m").values(), (std::vector<double>{0, 1, 0, 0}));
}

TEST(GraphForms, NormalizeZeroVectorHasZeroGradient) {
  ParamSet p;
  p.add("x", Tensor({3}, {0.0, 0.0, 0.0}), true);
  Graph g;
  const Var n = l2_normalize(g, g.parameter(p, "x"));
  const Var s = sum(g, n);
  const auto grads = reverse_mode_gradients(g, s, p);
  for (double v : grads.at("x").values()) EXPECT_EQ(v, 0.0);
  for (double v : g.value(n).values()) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace tactloc

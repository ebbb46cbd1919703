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
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "tactloc/encoder.h"
#include "tactloc/errors.h"
#include "tactloc/feature_file.h"
#include "tactloc/param_set.h"
#include "tactloc/raster.h"
#include "tactloc/rng.h"
#include "test_util.h"

namespace tactloc {
namespace {

using testing::random_feature_map;
using testing::TempDir;

Raster counting_raster(std::size_t side, std::size_t channels) {
  std::vector<std::uint8_t> s(side * side * channels);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(i % 256);
  return Raster(side, side, channels, s);
}

TEST(Patchify, ShapeForDefaultGeometry) {
  const Tensor t = patchify(Raster::filled(224, 224, 1, 9), 16);
  EXPECT_EQ(t.shape(), (Shape{256, 14, 14}));
}

TEST(Patchify, ConstantImageGivesIdenticalPatches) {
  const Tensor t = patchify(Raster::filled(8, 8, 3, 200), 4);
  for (double v : t.values()) EXPECT_EQ(v, 200.0 / 255.0);
}

TEST(Patchify, HandIndexedFourByFour) {
  const Tensor t = patchify(counting_raster(4, 1), 2);
  // Patch (0,0) holds pixels 0, 1, 4, 5.
  const std::vector<double> want = {0.0, 1.0 / 255, 4.0 / 255, 5.0 / 255};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(t.at(k, 0, 0), want[k]);
  // Patch (1,0) holds pixels 8, 9, 12, 13.
  EXPECT_EQ(t.at(0, 1, 0), 8.0 / 255);
  EXPECT_EQ(t.at(3, 1, 0), 13.0 / 255);
}

TEST(Patchify, RoundTripsThroughUnpatchify) {
  const Raster r = counting_raster(12, 3);
  EXPECT_EQ(unpatchify(patchify(r, 4), 4, 3), r);
}

TEST(Patchify, RejectsNonDivisibleSide) {
  EXPECT_THROW(patchify(Raster::filled(10, 10, 1, 0), 4), std::invalid_argument);
}

TEST(EncoderConfig, Validation) {
  EncoderConfig c;
  EXPECT_NO_THROW(c.validate());
  c.image_side = 100;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.shared_dim = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.layernorm_eps = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Encoder, RasterOutputShape) {
  EncoderConfig c;
  c.shared_dim = 8;
  const EncoderParams p = init_encoder_params(c, 1);
  const FeatureMap f = encode(counting_raster(224, 3), p, c);
  EXPECT_EQ(f.tensor().shape(), (Shape{8, 14, 14}));
}

TEST(Encoder, IdentityCompositionReproducesStandardizedInput) {
  EncoderConfig c;
  c.image_side = 8;
  c.patch_size = 2;
  c.backbone_kind = BackboneKind::kFeatureFile;
  c.feature_channels = 6;
  c.backbone_dim = 6;
  c.shared_dim = 6;
  c.layernorm_eps = 1e-12;
  EncoderParams p = init_encoder_params(c, 3);
  std::vector<double> eye(36, 0.0);
  for (int i = 0; i < 6; ++i) eye[i * 7] = 1.0;
  p.proj_weight = Tensor({6, 6}, eye);
  EXPECT_EQ(p.backbone_weight, p.proj_weight);

  // Standardize every location's channel vector first.
  Rng rng(4);
  FeatureMap raw = random_feature_map(rng, 6, 4, 4);
  std::vector<double> v = raw.tensor().values();
  for (std::size_t l = 0; l < 16; ++l) {
    double mean = 0, var = 0;
    for (std::size_t k = 0; k < 6; ++k) mean += v[k * 16 + l] / 6;
    for (std::size_t k = 0; k < 6; ++k) var += (v[k * 16 + l] - mean) * (v[k * 16 + l] - mean) / 6;
    for (std::size_t k = 0; k < 6; ++k) v[k * 16 + l] = (v[k * 16 + l] - mean) / std::sqrt(var);
  }
  const FeatureMap in(6, 4, 4, v);
  const FeatureMap out = encode(in, p, c);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(out.tensor()[i], v[i], 1e-6);
}

TEST(Encoder, DeterministicForFixedSeed) {
  EncoderConfig c;
  c.image_side = 32;
  c.patch_size = 8;
  const Raster img = counting_raster(32, 3);
  const FeatureMap a = encode(img, init_encoder_params(c, 9), c);
  const FeatureMap b = encode(img, init_encoder_params(c, 9), c);
  EXPECT_EQ(a, b);
  EXPECT_NE(init_encoder_params(c, 9).proj_weight, init_encoder_params(c, 10).proj_weight);
}

TEST(Encoder, RejectsMismatchedInput) {
  EncoderConfig c;
  c.image_side = 32;
  c.patch_size = 8;
  const Encoder enc("visual", c);
  ParamSet set;
  enc.add_params(set, init_encoder_params(c, 1), false, true);
  EXPECT_THROW(enc.encode(counting_raster(16, 3), set), std::invalid_argument);
  EXPECT_THROW(enc.encode(FeatureMap(32, 4, 4, std::vector<double>(512, 0.0)), set),
               std::invalid_argument);
}

TEST(Encoder, ParamsRoundTripThroughParamSet) {
  EncoderConfig c;
  c.image_side = 32;
  c.patch_size = 8;
  const Encoder enc("tactile", c);
  const EncoderParams p = init_encoder_params(c, 2);
  ParamSet set;
  enc.add_params(set, p, false, true);
  EXPECT_FALSE(set.trainable("tactile.backbone.weight"));
  EXPECT_TRUE(set.trainable("tactile.aligner.proj.weight"));
  EXPECT_EQ(set.size(), 6u);
  const EncoderParams q = enc.params_from(set);
  EXPECT_EQ(q.proj_weight, p.proj_weight);
  EXPECT_EQ(q.backbone_weight, p.backbone_weight);
}

TEST(Vtft, HeaderLayoutAndSize) {
  const FeatureMap f(8, 14, 14, std::vector<double>(8 * 14 * 14, 0.5));
  const std::string b = encode_feature_map(f);
  EXPECT_EQ(kVtftHeaderSize, 20u);
  EXPECT_EQ(b.size(), 20u + 4u * 8 * 14 * 14);
  EXPECT_EQ(b.size(), 6292u);
  EXPECT_EQ(b.substr(0, 4), "VTFT");
  EXPECT_EQ(static_cast<unsigned char>(b[4]), 1);
  EXPECT_EQ(static_cast<unsigned char>(b[5]), 0);
  EXPECT_EQ(static_cast<unsigned char>(b[6]), 0);
  EXPECT_EQ(static_cast<unsigned char>(b[8]), 8);
  EXPECT_EQ(static_cast<unsigned char>(b[12]), 14);
  EXPECT_EQ(static_cast<unsigned char>(b[16]), 14);
  float first;
  std::memcpy(&first, b.data() + 20, 4);
  EXPECT_EQ(first, 0.5f);
}

TEST(Vtft, RoundTripIsExactAtFloatPrecision) {
  TempDir dir("vtft");
  Rng rng(8);
  const FeatureMap f = random_feature_map(rng, 3, 5, 7);
  save_feature_map(f, dir / "f.vtft");
  const FeatureMap g = load_feature_map(dir / "f.vtft");
  ASSERT_EQ(g.tensor().shape(), f.tensor().shape());
  for (std::size_t i = 0; i < f.tensor().size(); ++i) {
    EXPECT_EQ(g.tensor()[i], static_cast<double>(static_cast<float>(f.tensor()[i])));
  }
  // A second round trip is the identity.
  EXPECT_EQ(decode_feature_map(encode_feature_map(g)), g);
}

TEST(Vtft, RejectsMalformedFiles) {
  const std::string good = encode_feature_map(FeatureMap(2, 2, 2, std::vector<double>(8, 1.0)));
  std::string bad = good;
  bad[0] = 'X';
  EXPECT_THROW(decode_feature_map(bad), FormatError);
  bad = good;
  bad[4] = 2;
  EXPECT_THROW(decode_feature_map(bad), FormatError);
  bad = good;
  bad[6] = 1;
  EXPECT_THROW(decode_feature_map(bad), FormatError);
  EXPECT_THROW(decode_feature_map(good.substr(0, good.size() - 1)), FormatError);
  EXPECT_THROW(decode_feature_map(good + "x"), FormatError);
  EXPECT_THROW(decode_feature_map(good.substr(0, 10)), FormatError);
}

TEST(Netpbm, RoundTripGrayAndColor) {
  TempDir dir("netpbm");
  const Raster gray = counting_raster(5, 1);
  const Raster color = counting_raster(4, 3);
  write_netpbm(gray, dir / "g.pgm");
  write_netpbm(color, dir / "c.ppm");
  EXPECT_EQ(read_netpbm(dir / "g.pgm"), gray);
  EXPECT_EQ(read_netpbm(dir / "c.ppm"), color);
  EXPECT_EQ(encode_netpbm(gray).substr(0, 11), "P5\n5 5\n255\n");
}

TEST(Netpbm, HeaderCommentsAreSkipped) {
  const std::string bytes = std::string("P5\n# made by hand\n2 1\n255\n") + '\x07' + '\x09';
  const Raster r = decode_netpbm(bytes);
  EXPECT_EQ(r.width(), 2u);
  EXPECT_EQ(r.at(1, 0), 9);
}

TEST(Netpbm, RejectsUnsupportedInput) {
  EXPECT_THROW(decode_netpbm("P2\n1 1\n255\n0"), FormatError);
  EXPECT_THROW(decode_netpbm("P5\n1 1\n65535\n00"), FormatError);
  EXPECT_THROW(decode_netpbm("P5\n2 2\n255\nab"), FormatError);
  EXPECT_THROW(Raster(2, 2, 2, std::vector<std::uint8_t>(8)), std::invalid_argument);
}

}  // namespace
}  // namespace tactloc

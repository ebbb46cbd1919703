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
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.h"
#include "tactloc/concept_queries.h"
#include "tactloc/dedup.h"
#include "tactloc/errors.h"
#include "tactloc/manifest.h"
#include "tactloc/mask.h"
#include "tactloc/prompt_filter.h"
#include "tactloc/raster.h"
#include "tactloc/records.h"
#include "tactloc/split.h"
#include "tactloc/touch_instance.h"
#include "test_util.h"

namespace tactloc {
namespace {

using testing::TempDir;

TEST(Records, ParsesFieldsAndDirectives) {
  const KeyValueFile f = parse_key_value_text("#categories=a,b\n\n# note\nx=1\ty=two words\n");
  EXPECT_EQ(f.directives.at("categories"), "a,b");
  ASSERT_EQ(f.records.size(), 1u);
  EXPECT_EQ(f.records[0].get("y"), "two words");
  EXPECT_EQ(f.records[0].line, 4u);
  EXPECT_THROW(f.records[0].get("z"), FormatError);
  EXPECT_EQ(f.records[0].get_or("z", "d"), "d");
}

TEST(Manifest, EmptyTextHasNoRecords) {
  EXPECT_TRUE(parse_manifest_text("").records.empty());
}

TEST(Manifest, OneLineParsesExactly) {
  const Manifest m = parse_manifest_text(
      "sample_id=s1\tvideo_id=v\tframe_index=12\tcategory=brick\timage_path=i.vtft\t"
      "tactile_path=t.vtft\tsplit=test\n");
  ASSERT_EQ(m.records.size(), 1u);
  const SampleRecord& r = m.records[0];
  EXPECT_EQ(r.sample_id, "s1");
  EXPECT_EQ(r.frame_index, 12u);
  EXPECT_EQ(r.tactile_path, "t.vtft");
  EXPECT_EQ(r.split, "test");
}

TEST(Manifest, DuplicateFrameNamesTheLine) {
  const std::string text =
      "sample_id=a\tvideo_id=v\tframe_index=1\tcategory=brick\timage_path=a\n"
      "sample_id=b\tvideo_id=v\tframe_index=1\tcategory=brick\timage_path=b\n";
  try {
    parse_manifest_text(text);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Manifest, RejectsUndeclaredCategoryAndUnknownField) {
  EXPECT_THROW(parse_manifest_text("#categories=grass\nsample_id=a\tvideo_id=v\tframe_index=1\t"
                                   "category=brick\timage_path=a\n"),
               FormatError);
  EXPECT_THROW(parse_manifest_text("sample_id=a\tvideo_id=v\tframe_index=1\tcategory=brick\t"
                                   "image_path=a\tcolour=red\n"),
               FormatError);
  EXPECT_THROW(parse_manifest_text("sample_id=a\tvideo_id=v\tframe_index=x\tcategory=b\timage_path=a\n"),
               FormatError);
}

TEST(Manifest, SerializeParseIsIdentity) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<SampleRecord> recs = testing::random_touch_records(rng, 60);
    // Dedupe (video, frame) collisions the generator may produce.
    std::set<std::pair<std::string, std::uint64_t>> seen;
    std::erase_if(recs, [&](const SampleRecord& r) {
      return !seen.insert({r.video_id, r.frame_index}).second;
    });
    if (!recs.empty()) recs[0].tactile_path.reset();
    const std::vector<std::string> cats = {"brick", "grass", "metal"};
    const Manifest m = parse_manifest_text(serialize_manifest(recs, cats));
    EXPECT_EQ(m.records, recs);
    EXPECT_EQ(m.categories, cats);
  }
}

TEST(TouchInstances, ShuffledRunIsOneInstance) {
  std::vector<SampleRecord> recs;
  for (std::uint64_t f = 332; f <= 347; ++f) recs.push_back(testing::touch_record("vid", f, "brick"));
  Rng rng(1);
  std::shuffle(recs.begin(), recs.end(), rng.engine());
  const auto inst = extract_touch_instances(recs);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].start, 332u);
  EXPECT_EQ(inst[0].end, 347u);
  EXPECT_EQ(inst[0].length(), 16u);
  EXPECT_EQ(inst[0].instance_id, "vid:332-347");
  EXPECT_EQ(inst[0].members.front(), "vid_f0332");
}

TEST(TouchInstances, SingleRecord) {
  const std::vector<SampleRecord> recs = {testing::touch_record("v", 5, "grass")};
  const auto inst = extract_touch_instances(recs);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].length(), 1u);
}

TEST(TouchInstances, MatchesAdjacencyOracle) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const std::vector<SampleRecord> recs = testing::random_touch_records(rng, 100);
    const auto inst = extract_touch_instances(recs);
    EXPECT_EQ(testing::as_partition(inst), testing::adjacency_oracle(recs));
    std::size_t members = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      members += inst[i].members.size();
      EXPECT_EQ(inst[i].length(), inst[i].members.size());
      if (i > 0) {
        EXPECT_LT(std::tie(inst[i - 1].video_id, inst[i - 1].start),
                  std::tie(inst[i].video_id, inst[i].start));
      }
    }
    EXPECT_EQ(members, recs.size());
  }
}

TEST(TouchInstances, OutDomainRecordsAreExcluded) {
  std::vector<SampleRecord> recs = {testing::touch_record("v", 1, "brick"),
                                    testing::touch_record("w", 1, "brick")};
  recs[1].tactile_path.reset();
  EXPECT_EQ(touch_records(recs).size(), 1u);
}

TEST(Split, NeedsTwoVideos) {
  Rng rng(1);
  std::vector<TouchInstance> one = testing::random_instances(rng, 1);
  EXPECT_THROW(split_by_video(one, 0.3, 1), ValidationError);
  std::vector<TouchInstance> two = testing::random_instances(rng, 2);
  EXPECT_THROW(split_by_video(two, 0.0, 1), ValidationError);
  EXPECT_THROW(split_by_video(two, 1.0, 1), ValidationError);
}

TEST(Split, DeterministicAndDisjoint) {
  Rng rng(2);
  const auto inst = testing::random_instances(rng, 10);
  const VideoSplit a = split_by_video(inst, 0.3, 9), b = split_by_video(inst, 0.3, 9);
  EXPECT_EQ(a.test_videos, b.test_videos);
  EXPECT_EQ(a.train, b.train);
  std::vector<std::string> both;
  std::set_intersection(a.train_videos.begin(), a.train_videos.end(), a.test_videos.begin(),
                        a.test_videos.end(), std::back_inserter(both));
  EXPECT_TRUE(both.empty());
  EXPECT_EQ(a.train_videos.size() + a.test_videos.size(), 10u);
}

TEST(Split, ReplaysGreedyPrefixAssignment) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing::random_instances(rng, 2 + rng.index(10));
    const double frac = 0.1 + 0.8 * rng.uniform();
    const VideoSplit s = split_by_video(inst, frac, t);
    // Enumerate every non-trivial prefix of the shuffled order.
    const auto order = shuffled_videos(inst, t);
    std::map<std::string, std::size_t> count;
    for (const auto& i : inst) ++count[i.video_id];
    double best = INFINITY;
    std::size_t max_video = 0, cum = 0;
    for (const auto& [v, c] : count) max_video = std::max(max_video, c);
    for (std::size_t k = 1; k < order.size(); ++k) {
      cum += count[order[k - 1]];
      best = std::min(best, std::abs(double(cum) / inst.size() - frac));
    }
    const double got = double(s.test.size()) / inst.size();
    EXPECT_NEAR(std::abs(got - frac), best, 1e-15);
    EXPECT_LE(std::abs(got - frac), double(max_video) / inst.size() + 1e-12);
    std::set<std::string> test_v(s.test_videos.begin(), s.test_videos.end());
    for (const auto& i : s.train) EXPECT_FALSE(test_v.contains(i.video_id));
  }
}

TEST(Split, CapPerVideoAndCategory) {
  Rng rng(8);
  const auto inst = testing::random_instances(rng, 6);
  const auto capped = cap_instances_per_video(inst, 1);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& t : capped) EXPECT_TRUE(seen.insert({t.video_id, t.category}).second);
  EXPECT_EQ(cap_instances_per_video(inst, 0).size(), inst.size());
}

TEST(Dedup, DistinctDuplicateAndPlanted) {
  TempDir dir("dedup");
  std::vector<std::string> paths;
  Rng rng(4);
  std::vector<std::string> contents;
  for (int i = 0; i < 15; ++i) contents.push_back("content-" + std::to_string(i));
  for (int i = 0; i < 5; ++i) contents.push_back(contents[rng.index(15)]);
  std::shuffle(contents.begin(), contents.end(), rng.engine());
  for (std::size_t i = 0; i < contents.size(); ++i) {
    const auto p = dir / ("f" + std::to_string(i) + ".bin");
    write_file_bytes(p, contents[i]);
    paths.push_back(p.string());
  }
  const DedupResult r = dedup_by_content_hash(paths);
  // Pairwise byte-comparison oracle.
  std::vector<std::string> kept;
  std::vector<DroppedDuplicate> dropped;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::size_t twin = i;
    for (std::size_t j = 0; j < i && twin == i; ++j) {
      if (read_file_bytes(paths[j]) == read_file_bytes(paths[i])) twin = j;
    }
    if (twin == i) {
      kept.push_back(paths[i]);
    } else {
      dropped.push_back({paths[i], paths[twin]});
    }
  }
  EXPECT_EQ(r.kept, kept);
  EXPECT_EQ(r.dropped, dropped);
  EXPECT_EQ(r.dropped.size(), 5u);

  const std::vector<std::string> twice = {paths[0], paths[0]};
  const DedupResult t = dedup_by_content_hash(twice);
  ASSERT_EQ(t.dropped.size(), 1u);
  EXPECT_EQ(t.dropped[0].duplicate_of, paths[0]);
  const std::vector<std::string> distinct = {paths[0]};
  EXPECT_TRUE(dedup_by_content_hash(distinct).dropped.empty());
  const std::vector<std::string> missing = {(dir / "nope").string()};
  EXPECT_THROW(dedup_by_content_hash(missing), IoError);
}

TEST(PromptFilter, PerfectMatchRetainedTieRejected) {
  PromptSet ps;
  ps.positive = {"pos", {1, 0, 0}};
  ps.negatives = {{"neg", {0, 1, 0}}};
  const std::vector<ImageEmbedding> imgs = {{"a", {2, 0, 0}}, {"tie", {1, 1, 0}}};
  const PromptFilterResult r = filter_by_prompt_argmax(imgs, ps);
  EXPECT_EQ(r.retained, std::vector<std::string>{"a"});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0], (PromptRejection{"tie", "neg"}));
}

TEST(PromptFilter, MatchesArgmaxOracleAndScaleInvariant) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const PromptSet ps = testing::random_prompt_set(rng, 8, 3);
    std::vector<ImageEmbedding> imgs;
    for (int i = 0; i < 50; ++i) imgs.push_back({"img" + std::to_string(i), testing::random_embedding(rng, 8)});
    const PromptFilterResult r = filter_by_prompt_argmax(imgs, ps);
    EXPECT_EQ(r.retained, testing::argmax_oracle(imgs, ps));
    EXPECT_EQ(r.retained.size() + r.rejected.size(), imgs.size());

    std::vector<ImageEmbedding> scaled = imgs;
    for (auto& img : scaled) {
      const double s = 0.01 + 100.0 * rng.uniform();
      for (double& x : img.vector) x *= s;
    }
    EXPECT_EQ(filter_by_prompt_argmax(scaled, ps).retained, r.retained);

    PromptSet more = ps;
    more.negatives.push_back({"extra", testing::random_embedding(rng, 8)});
    EXPECT_LE(filter_by_prompt_argmax(imgs, more).retained.size(), r.retained.size());
  }
}

TEST(PromptFilter, RejectsBadEmbeddings) {
  PromptSet ps;
  ps.positive = {"pos", {1, 0}};
  ps.negatives = {{"neg", {0, 1}}};
  const std::vector<ImageEmbedding> wrong_dim = {{"a", {1, 0, 0}}};
  EXPECT_THROW(filter_by_prompt_argmax(wrong_dim, ps), std::invalid_argument);
  const std::vector<ImageEmbedding> zero = {{"a", {0, 0}}};
  EXPECT_THROW(filter_by_prompt_argmax(zero, ps), std::invalid_argument);
  ps.negatives.clear();
  const std::vector<ImageEmbedding> ok = {{"a", {1, 0}}};
  EXPECT_THROW(filter_by_prompt_argmax(ok, ps), std::invalid_argument);
}

TEST(ConceptQueries, CrossProductAndCloseUps) {
  const std::vector<std::string> objects = {"house"}, places = {"suburban neighborhood"};
  const auto q = emit_concept_query_templates("brick", objects, places);
  EXPECT_NE(std::find(q.begin(), q.end(), "brick house in a suburban neighborhood"), q.end());
  EXPECT_EQ(emit_concept_query_templates("brick", {}, {}),
            std::vector<std::string>{"A close-up shot of brick"});
  const std::vector<std::string> o2 = {"wall", "path"}, p3 = {"park", "office", "alley"};
  EXPECT_EQ(emit_concept_query_templates("stone", o2, p3).size(), 8u);
  EXPECT_THROW(emit_concept_query_templates("", o2, p3), ValidationError);
}

TEST(ConceptQueries, ArticleFollowsFirstSound) {
  const std::vector<std::string> objects = {"floor"}, places = {"office"};
  EXPECT_EQ(emit_concept_query_templates("wood", objects, places)[0], "wood floor in an office");
}

TEST(Mask, FullEmptyAndCheckerboard) {
  const std::string full = encode_netpbm(Raster::filled(3, 2, 1, 255));
  EXPECT_EQ(decode_mask(full).count(), 6u);
  const std::string empty = encode_netpbm(Raster::filled(3, 2, 1, 0));
  EXPECT_EQ(decode_mask(empty).count(), 0u);
  std::vector<std::uint8_t> px(16);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) px[y * 4 + x] = (x + y) % 2 ? 255 : 0;
  }
  const MaskImage m = decode_mask(encode_netpbm(Raster(4, 4, 1, px)));
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(m.at(x, y), (x + y) % 2 == 1);
  }
  EXPECT_EQ(encode_mask(m), encode_netpbm(Raster(4, 4, 1, px)));
}

TEST(Mask, RoundTripAndErrors) {
  TempDir dir("mask");
  MaskImage m(5, 3);
  m.set(1, 2, true);
  m.set(4, 0, true);
  save_mask(m, dir / "m.pgm");
  EXPECT_EQ(load_mask(dir / "m.pgm"), m);
  EXPECT_THROW(decode_mask(encode_netpbm(Raster::filled(2, 2, 3, 0))), FormatError);
  EXPECT_THROW(decode_mask("P5\n2 2\n255\n\x01"), FormatError);
}

}  // namespace
}  // namespace tactloc

#include "posegraph/annotations.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "posegraph/error.hpp"
#include "json.hpp"
#include "test_graphs.hpp"

namespace posegraph {
namespace {

using nlohmann::json;
using testing::random_corpus;

Skeleton p3() { return Skeleton::from_edge_list(3, testing::path_edges(3), "p3"); }

InstanceAnnotation instance(std::int64_t id, std::vector<std::array<double, 3>> kps,
                            std::optional<BoundingBox> bbox = std::nullopt) {
  InstanceAnnotation out{id, {}, bbox};
  for (const auto& k : kps) {
    out.keypoints.push_back({k[0], k[1], static_cast<Visibility>(static_cast<int>(k[2]))});
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kMalformed;
}

TEST(ParseAnnotations, ReadsKeypointsAndBBox) {
  const std::string doc = R"({"annotations": [
    {"id": 7, "keypoints": [0,0,2, 3,4,1, 0,0,0], "bbox": [1,2,3,4]},
    {"id": 8, "keypoints": [1,1,2, 2,2,2, 3,3,2]}]})";
  const auto corpus = parse_annotations(doc, p3());
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].id, 7);
  EXPECT_EQ(corpus[0].keypoints[1].x, 3.0);
  EXPECT_EQ(corpus[0].keypoints[1].visibility, Visibility::kOccluded);
  EXPECT_FALSE(corpus[0].keypoints[2].labeled());
  ASSERT_TRUE(corpus[0].bbox.has_value());
  EXPECT_EQ(corpus[0].bbox->height, 4.0);
  EXPECT_FALSE(corpus[1].bbox.has_value());
}

TEST(ParseAnnotations, Errors) {
  const auto skeleton = p3();
  EXPECT_EQ(kind_of([&] { parse_annotations(R"({"annotations": [{"id": 42, "keypoints": [0,0,2]}]})", skeleton); }),
            ErrorKind::kCountMismatch);
  try {
    parse_annotations(R"({"annotations": [{"id": 42, "keypoints": [0,0,2]}]})", skeleton);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("42"), std::string::npos);
  }
  EXPECT_EQ(kind_of([&] {
              parse_annotations(R"({"annotations": [{"id": 1, "keypoints": [0,0,3, 0,0,2, 0,0,2]}]})", skeleton);
            }),
            ErrorKind::kInvalidVisibility);
  EXPECT_EQ(kind_of([&] { parse_annotations("not json", skeleton); }), ErrorKind::kMalformed);
  EXPECT_EQ(kind_of([&] { parse_annotations(R"({"images": []})", skeleton); }), ErrorKind::kMalformed);
}

TEST(ParseAnnotations, WholeBodySplitArrays) {
  const auto skeleton = Skeleton::from_edge_list(5, testing::path_edges(5));
  const std::string doc = R"({"annotations": [{"id": 3, "keypoints": [0,0,2],
    "foot_kpts": [1,0,2], "face_kpts": [2,0,2], "lefthand_kpts": [3,0,1], "righthand_kpts": [4,0,0]}]})";
  const auto corpus = parse_annotations(doc, skeleton);
  ASSERT_EQ(corpus[0].keypoints.size(), 5u);
  EXPECT_EQ(corpus[0].keypoints[3].x, 3.0);
  EXPECT_EQ(corpus[0].keypoints[4].visibility, Visibility::kUnlabeled);
}

TEST(AveragingMode, Names) {
  EXPECT_EQ(parse_averaging_mode("raw"), AveragingMode::kRaw);
  EXPECT_EQ(parse_averaging_mode("scale-normalized"), AveragingMode::kScaleNormalized);
  EXPECT_EQ(parse_averaging_mode("scale_normalized"), AveragingMode::kScaleNormalized);
  EXPECT_EQ(to_string(AveragingMode::kRaw), "raw");
  EXPECT_THROW(parse_averaging_mode("median"), Error);
}

TEST(EdgeLengths, MeanOverLabeledPairs) {
  const AnnotationCorpus corpus{
      instance(1, {{0, 0, 2}, {3, 0, 2}, {0, 0, 0}}),
      instance(2, {{0, 0, 1}, {0, 5, 2}, {9, 9, 0}}),
      instance(3, {{0, 0, 0}, {100, 0, 2}, {100, 10, 2}}),  // a missing: only b-c counts
  };
  const auto stats = compute_edge_lengths(corpus, p3(), AveragingMode::kRaw);
  EXPECT_EQ(stats.edges[0].count, 2u);
  EXPECT_DOUBLE_EQ(stats.edges[0].mean_length, 4.0);
  EXPECT_EQ(stats.edges[1].count, 1u);
  EXPECT_DOUBLE_EQ(stats.edges[1].mean_length, 10.0);
  EXPECT_EQ(stats.covered_count(), 2u);
}

TEST(EdgeLengths, ScaleNormalized) {
  const AnnotationCorpus corpus{instance(1, {{0, 0, 2}, {6, 0, 2}, {0, 0, 0}}, BoundingBox{0, 0, 3, 3})};
  const auto stats = compute_edge_lengths(corpus, p3(), AveragingMode::kScaleNormalized);
  EXPECT_DOUBLE_EQ(stats.edges[0].mean_length, 2.0);
  EXPECT_FALSE(stats.edges[1].covered());
}

TEST(EdgeLengths, Errors) {
  const auto skeleton = p3();
  EXPECT_EQ(kind_of([&] { compute_edge_lengths({}, skeleton, AveragingMode::kRaw); }), ErrorKind::kEmptyCorpus);
  const AnnotationCorpus no_bbox{instance(1, {{0, 0, 2}, {6, 0, 2}, {0, 0, 0}})};
  EXPECT_EQ(kind_of([&] { compute_edge_lengths(no_bbox, skeleton, AveragingMode::kScaleNormalized); }),
            ErrorKind::kMissingBBox);
  const AnnotationCorpus empty_bbox{instance(1, {{0, 0, 2}, {6, 0, 2}, {0, 0, 0}}, BoundingBox{0, 0, 0, 5})};
  EXPECT_EQ(kind_of([&] { compute_edge_lengths(empty_bbox, skeleton, AveragingMode::kScaleNormalized); }),
            ErrorKind::kMissingBBox);
  const AnnotationCorpus nothing{instance(1, {{0, 0, 2}, {0, 0, 0}, {5, 5, 2}})};
  EXPECT_EQ(kind_of([&] { compute_edge_lengths(nothing, skeleton, AveragingMode::kRaw); }),
            ErrorKind::kUncoveredEdge);
}

TEST(StatsToLengths, FallbackAndErrors) {
  const auto skeleton = p3();
  EdgeLengthStats stats{{{2, 4.0}, {0, 0.0}}};
  try {
    stats_to_lengths(stats, skeleton);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUncoveredEdge);
    EXPECT_NE(std::string(e.what()).find("v1-v2"), std::string::npos);
  }
  const auto lengths = stats_to_lengths(stats, skeleton, 2.5);
  EXPECT_EQ(lengths.at({0, 1}), 4.0);
  EXPECT_EQ(lengths.at({1, 2}), 2.5);
}

TEST(StatsToLengths, ZeroMeanIsClamped) {
  EdgeLengthStats stats{{{3, 0.0}, {1, 8.0}}};
  const auto lengths = stats_to_lengths(stats, p3());
  EXPECT_DOUBLE_EQ(lengths.at({0, 1}), 8.0 * kZeroLengthClampFraction);
  EXPECT_EQ(lengths.at({1, 2}), 8.0);
  // a tiny but nonzero mean is kept
  EdgeLengthStats small{{{1, 1e-9}, {1, 8.0}}};
  EXPECT_EQ(stats_to_lengths(small, p3()).at({0, 1}), 1e-9);
}

TEST(EdgeLengths, OrderAndDuplicationInvariant) {
  std::mt19937_64 rng(31);
  const auto skeleton = Skeleton::from_edge_list(6, testing::cycle_edges(6));
  for (const auto mode : {AveragingMode::kRaw, AveragingMode::kScaleNormalized}) {
    const auto corpus = random_corpus(rng, 1000, 6);
    const auto base = compute_edge_lengths(corpus, skeleton, mode);

    auto shuffled = corpus;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto permuted = compute_edge_lengths(shuffled, skeleton, mode);

    auto doubled = corpus;
    doubled.insert(doubled.end(), corpus.begin(), corpus.end());
    const auto twice = compute_edge_lengths(doubled, skeleton, mode);

    for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
      EXPECT_EQ(permuted.edges[e].mean_length, base.edges[e].mean_length);
      EXPECT_EQ(permuted.edges[e].count, base.edges[e].count);
      EXPECT_EQ(twice.edges[e].mean_length, base.edges[e].mean_length);
      EXPECT_EQ(twice.edges[e].count, 2 * base.edges[e].count);
    }
  }
}

TEST(EdgeLengths, ParallelMatchesSerial) {
  std::mt19937_64 rng(32);
  const auto skeleton = Skeleton::from_edge_list(10, testing::lollipop_edges());
  for (std::size_t count : {1u, 255u, 256u, 257u, 3000u}) {
    const auto corpus = random_corpus(rng, count, 10);
    for (const auto mode : {AveragingMode::kRaw, AveragingMode::kScaleNormalized}) {
      const auto a = compute_edge_lengths(corpus, skeleton, mode);
      const auto b = serial::compute_edge_lengths(corpus, skeleton, mode);
      for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
        EXPECT_EQ(a.edges[e].count, b.edges[e].count);
        EXPECT_EQ(a.edges[e].mean_length, b.edges[e].mean_length);
      }
    }
  }
}

TEST(EdgeLengths, P3Fixture) {
  const std::string dir = POSEGRAPH_DATA_DIR;
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto skeleton = parse_skeleton(read(dir + "/p3.skeleton.json"));
  const auto corpus = parse_annotations(read(dir + "/p3.annotations.json"), skeleton);
  EXPECT_EQ(corpus.size(), 5u);
  const auto stats = compute_edge_lengths(corpus, skeleton, AveragingMode::kRaw);
  EXPECT_EQ(stats.covered_count(), 2u);
}

}  // namespace
}  // namespace posegraph

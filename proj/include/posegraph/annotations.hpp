#pragma once

/// \file annotations.hpp
/// \brief COCO-style keypoint annotations and per-connection average lengths.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "posegraph/skeleton.hpp"

namespace posegraph {

enum class Visibility : std::uint8_t { kUnlabeled = 0, kOccluded = 1, kVisible = 2 };

struct KeypointObservation {
  double x = 0.0;
  double y = 0.0;
  Visibility visibility = Visibility::kUnlabeled;

  bool labeled() const { return visibility != Visibility::kUnlabeled; }
};

struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct InstanceAnnotation {
  std::int64_t id = 0;
  std::vector<KeypointObservation> keypoints;
  std::optional<BoundingBox> bbox;
};

using AnnotationCorpus = std::vector<InstanceAnnotation>;

/// Reads the `annotations` array of a COCO keypoint document. Entries must
/// carry exactly 3 * keypoint_count numbers (x, y, v).
AnnotationCorpus parse_annotations(std::string_view document, const Skeleton& skeleton);

enum class AveragingMode {
  kRaw,              ///< Pixel distances.
  kScaleNormalized,  ///< Each distance divided by sqrt(bbox area).
};

std::string_view to_string(AveragingMode mode);
AveragingMode parse_averaging_mode(std::string_view name);

struct EdgeStat {
  std::size_t count = 0;
  double mean_length = 0.0;

  bool covered() const { return count > 0; }
};

/// One entry per skeleton edge, in edge order.
struct EdgeLengthStats {
  std::vector<EdgeStat> edges;

  std::size_t covered_count() const;
};

/// Averages ||p_a - p_b|| over the instances where both endpoints are labeled
/// (visibility > 0). Sums are exact, so the means do not depend on instance
/// order, and instances are processed in parallel blocks merged in a fixed
/// order. Throws kEmptyCorpus, kMissingBBox (scale-normalised mode), and
/// kUncoveredEdge when no edge receives any contribution.
EdgeLengthStats compute_edge_lengths(const AnnotationCorpus& corpus, const Skeleton& skeleton,
                                     AveragingMode mode);

namespace serial {

EdgeLengthStats compute_edge_lengths(const AnnotationCorpus& corpus, const Skeleton& skeleton,
                                     AveragingMode mode);

}  // namespace serial

/// Zero means are clamped to this fraction of the largest mean.
inline constexpr double kZeroLengthClampFraction = 1e-6;

/// Covered edges map to their mean; uncovered ones to `fallback`, or
/// kUncoveredEdge naming the first such edge when no fallback is given.
EdgeLengthMap stats_to_lengths(const EdgeLengthStats& stats, const Skeleton& skeleton,
                               std::optional<double> fallback = std::nullopt);

}  // namespace posegraph

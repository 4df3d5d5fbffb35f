#pragma once

/// \file weights.hpp
/// \brief Keypoint and connection training weights.
///
/// Keypoint weights are the per-vertex h = 1/H values rescaled so they sum to
/// the number of keypoints. A connection takes the larger h of its two
/// endpoints, and those values are rescaled to sum to the number of
/// connections. The equal and crafted schemes feed ones or the skeleton's
/// crafted multipliers through the same two steps.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posegraph/skeleton.hpp"

namespace posegraph {

inline constexpr std::size_t kDefaultEgoRadius = 3;

enum class SchemeKind { kLocal, kGlobal, kEqual, kCrafted };

class Scheme {
 public:
  static Scheme local(std::size_t radius = kDefaultEgoRadius) { return {SchemeKind::kLocal, radius}; }
  static Scheme global() { return {SchemeKind::kGlobal, 0}; }
  static Scheme equal() { return {SchemeKind::kEqual, 0}; }
  static Scheme crafted() { return {SchemeKind::kCrafted, 0}; }

  /// "local", "global", "equal" or "crafted"; radius only applies to local.
  static Scheme parse(std::string_view name, std::size_t radius = kDefaultEgoRadius);

  SchemeKind kind() const { return kind_; }
  std::size_t radius() const { return radius_; }

  /// "local(r=3)", "global", "equal", "crafted".
  std::string name() const;

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  Scheme(SchemeKind kind, std::size_t radius) : kind_(kind), radius_(radius) {}
  SchemeKind kind_;
  std::size_t radius_;
};

struct WeightTable {
  Scheme scheme = Scheme::equal();
  std::vector<double> vertex_weights;  ///< Sums to the keypoint count.
  std::vector<double> edge_weights;    ///< Sums to the connection count.
};

/// Unnormalised per-vertex values of a scheme: h for local/global, 1 for
/// equal, the crafted multiplier for crafted.
std::vector<double> scheme_vertex_values(const WeightedPoseGraph& graph, const Scheme& scheme);

/// values * size / sum(values).
std::vector<double> normalize_to_count(std::span<const double> values);

std::vector<double> vertex_weights(const WeightedPoseGraph& graph, const Scheme& scheme);

/// max(value[a], value[b]) per edge, normalised to the edge count.
std::vector<double> edge_weights(const WeightedPoseGraph& graph,
                                 std::span<const double> vertex_values);

/// Both weight vectors, checked against the normalisation invariants
/// (kNormalization on failure).
WeightTable build_weight_table(const WeightedPoseGraph& graph, const Scheme& scheme);

struct WeightSummary {
  double min = 0.0;
  double max = 0.0;
  double ratio = 0.0;  ///< max / min
};

WeightSummary summarize(std::span<const double> weights);

struct SchemeComparisonRow {
  WeightTable table;
  WeightSummary vertices;
  WeightSummary edges;
};

/// Local, global, equal and crafted tables, in that order.
std::vector<SchemeComparisonRow> compare_schemes(const WeightedPoseGraph& graph,
                                                 std::size_t radius = kDefaultEgoRadius);

}  // namespace posegraph

#pragma once

/// \file render.hpp
/// \brief Graphviz and SVG views of a weighted pose graph.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "posegraph/skeleton.hpp"
#include "posegraph/weights.hpp"

namespace posegraph {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Keypoint name -> 2D position (SVG coordinates, y pointing down).
using Layout = std::map<std::string, Point2, std::less<>>;

/// Reads `{"keypoints": {"name": [x, y], ...}}`.
Layout parse_layout(std::string_view document);

/// Fruchterman-Reingold placement from a fixed seed; deterministic for a
/// given graph and seed.
Layout force_directed_layout(const WeightedPoseGraph& graph, std::uint32_t seed = 7);

/// Name of the color ramp, echoed into every render.
inline constexpr std::string_view kColorRampName = "viridis (9-stop linear interpolation)";

/// `#rrggbb` for t in [0, 1] (clamped).
std::string ramp_color(double t);

/// Marker radius in pixels, proportional to the keypoint weight.
double marker_radius(double weight);

/// Graphviz document with one weight label per node and per edge, in
/// skeleton order. Throws kTableMismatch when the table does not fit.
std::string emit_dot(const WeightedPoseGraph& graph, const WeightTable& table,
                     std::span<const std::string> metadata = {});

/// SVG document: markers sized and colored by keypoint weight, connections
/// colored by connection weight, a min/max legend. Throws kMissingLayout
/// naming the first keypoint without a position.
std::string emit_svg(const WeightedPoseGraph& graph, const WeightTable& table,
                     const Layout& layout, std::span<const std::string> metadata = {});

}  // namespace posegraph

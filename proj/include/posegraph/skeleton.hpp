#pragma once

/// \file skeleton.hpp
/// \brief Pose skeleton topology and the distance-weighted pose graph.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace posegraph {

/// A named keypoint. `index` equals the keypoint's position in the skeleton.
struct KeypointDef {
  std::size_t index = 0;
  std::string name;
  double crafted_multiplier = 1.0;  ///< Per-keypoint factor of the crafted scheme.

  friend bool operator==(const KeypointDef&, const KeypointDef&) = default;
};

/// Undirected connection between two keypoint indices.
struct EdgeDef {
  std::size_t a = 0;
  std::size_t b = 0;

  friend bool operator==(const EdgeDef&, const EdgeDef&) = default;
};

/// Unordered edge identity, stored as (min, max).
using EdgeKey = std::pair<std::size_t, std::size_t>;

inline EdgeKey make_edge_key(std::size_t a, std::size_t b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

using EdgeLengthMap = std::map<EdgeKey, double>;

/// Validated, immutable pose topology: unique names, no self-loops, no
/// multi-edges, every endpoint in range, and a single connected component.
class Skeleton {
 public:
  /// Throws Error on any invariant violation, naming the offending element.
  Skeleton(std::string name, std::vector<KeypointDef> keypoints,
           std::vector<EdgeDef> edges);

  /// Keypoints are named "v0".."v{n-1}". Mostly useful for generated graphs.
  static Skeleton from_edge_list(std::size_t keypoint_count,
                                 std::span<const EdgeKey> edges,
                                 std::string name = "graph");

  const std::string& name() const { return name_; }
  std::span<const KeypointDef> keypoints() const { return keypoints_; }
  std::span<const EdgeDef> edges() const { return edges_; }
  std::size_t keypoint_count() const { return keypoints_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<std::size_t> find_keypoint(std::string_view name) const;
  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const;

  /// "name_a-name_b", used in diagnostics.
  std::string edge_label(std::size_t edge) const;

  friend bool operator==(const Skeleton& lhs, const Skeleton& rhs) {
    return lhs.name_ == rhs.name_ && lhs.keypoints_ == rhs.keypoints_ &&
           lhs.edges_ == rhs.edges_;
  }

 private:
  std::string name_;
  std::vector<KeypointDef> keypoints_;
  std::vector<EdgeDef> edges_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::map<EdgeKey, std::size_t> by_edge_;
};

/// True when a breadth-first search from vertex 0 reaches every vertex.
bool is_connected(std::size_t vertex_count, std::span<const EdgeDef> edges);

/// Parses the JSON skeleton document (`name`, `keypoints`, `edges`).
Skeleton parse_skeleton(std::string_view document);

/// Canonical JSON form; parse_skeleton(serialize_skeleton(s)) == s.
std::string serialize_skeleton(const Skeleton& skeleton);

/// A skeleton with one strictly positive, finite length per edge, in edge order.
class WeightedPoseGraph {
 public:
  WeightedPoseGraph(Skeleton skeleton, std::vector<double> edge_lengths);

  const Skeleton& skeleton() const { return skeleton_; }
  std::span<const double> edge_lengths() const { return lengths_; }
  std::size_t vertex_count() const { return skeleton_.keypoint_count(); }
  std::size_t edge_count() const { return skeleton_.edge_count(); }

  /// Same topology with every length multiplied by `factor` > 0.
  WeightedPoseGraph scaled(double factor) const;

 private:
  Skeleton skeleton_;
  std::vector<double> lengths_;
};

/// Binds `lengths` to the skeleton's edges. The map must cover exactly the
/// edge set.
WeightedPoseGraph attach_lengths(Skeleton skeleton, const EdgeLengthMap& lengths);

WeightedPoseGraph with_uniform_lengths(Skeleton skeleton, double length = 1.0);

}  // namespace posegraph

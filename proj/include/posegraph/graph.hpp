#pragma once

/// \file graph.hpp
/// \brief Weighted shortest paths, hop-limited ego graphs and the exhaustive
/// all-pairs oracle used by the tests.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "posegraph/skeleton.hpp"

namespace posegraph {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoHops = std::numeric_limits<std::size_t>::max();

struct Neighbor {
  std::size_t vertex;
  double length;
};

/// Compressed adjacency lists of an undirected graph with positive lengths.
/// Neighbours of a vertex appear in edge-list order.
class AdjacencyGraph {
 public:
  AdjacencyGraph(std::size_t vertex_count, std::span<const EdgeDef> edges,
                 std::span<const double> lengths);
  explicit AdjacencyGraph(const WeightedPoseGraph& graph);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Neighbor> neighbors(std::size_t vertex) const {
    return {neighbors_.data() + offsets_[vertex], neighbors_.data() + offsets_[vertex + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> neighbors_;
};

/// Single-source distances; unreachable vertices hold kUnreachable.
struct DistanceRow {
  std::size_t source = 0;
  std::vector<double> distances;
};

/// Dijkstra with a binary heap. Throws kInvalidVertex for a bad source.
DistanceRow shortest_paths_from(const AdjacencyGraph& graph, std::size_t source);
DistanceRow shortest_paths_from(const WeightedPoseGraph& graph, std::size_t source);

/// Unweighted edge counts from `source`; kNoHops when unreachable.
std::vector<std::size_t> hop_distances(const AdjacencyGraph& graph, std::size_t source);

/// Largest finite hop distance over all vertex pairs.
std::size_t hop_diameter(const AdjacencyGraph& graph);

/// Subgraph induced by every vertex within `radius` hops of `center`.
/// Local vertex i of `graph` is global vertex `vertices[i]`; vertices are kept
/// in ascending global order and edges in skeleton edge order, so a ball that
/// covers the whole graph reproduces the full adjacency exactly.
struct EgoGraph {
  std::size_t center = 0;
  std::size_t radius = 0;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;  ///< Global edge indices of the induced edges.
  std::size_t local_center = 0;
  AdjacencyGraph graph;
};

EgoGraph ego_graph(const WeightedPoseGraph& graph, std::size_t center, std::size_t radius);

/// Same as above with the full graph's adjacency already built.
EgoGraph ego_graph(const WeightedPoseGraph& graph, const AdjacencyGraph& adjacency,
                   std::size_t center, std::size_t radius);

namespace oracle {

inline constexpr std::size_t kMaxOracleVertices = 64;

using DistanceMatrix = std::vector<std::vector<double>>;

/// Floyd-Warshall over the raw edge list. Test-scale only: throws
/// kOracleTooLarge above kMaxOracleVertices.
DistanceMatrix all_pairs(std::size_t vertex_count, std::span<const EdgeDef> edges,
                         std::span<const double> lengths);
DistanceMatrix all_pairs(const WeightedPoseGraph& graph);

}  // namespace oracle

}  // namespace posegraph

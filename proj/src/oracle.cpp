#include <string>

#include "posegraph/error.hpp"
#include "posegraph/graph.hpp"

namespace posegraph::oracle {

DistanceMatrix all_pairs(std::size_t vertex_count, std::span<const EdgeDef> edges,
                         std::span<const double> lengths) {
  if (vertex_count > kMaxOracleVertices) {
    throw Error(ErrorKind::kOracleTooLarge,
                std::to_string(vertex_count) + " vertices exceeds the oracle limit of " +
                    std::to_string(kMaxOracleVertices));
  }
  DistanceMatrix d(vertex_count, std::vector<double>(vertex_count, kUnreachable));
  for (std::size_t i = 0; i < vertex_count; ++i) d[i][i] = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    if (lengths[e] < d[a][b]) {
      d[a][b] = lengths[e];
      d[b][a] = lengths[e];
    }
  }
  for (std::size_t k = 0; k < vertex_count; ++k) {
    for (std::size_t i = 0; i < vertex_count; ++i) {
      for (std::size_t j = 0; j < vertex_count; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

DistanceMatrix all_pairs(const WeightedPoseGraph& graph) {
  return all_pairs(graph.vertex_count(), graph.skeleton().edges(), graph.edge_lengths());
}

}  // namespace posegraph::oracle

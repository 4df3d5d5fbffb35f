#pragma once

// Graph fixtures, random generators and a brute-force weight oracle shared by
// the unit and acceptance tests. The oracle only uses Floyd-Warshall: hop
// balls come from an all-pairs run on unit lengths and ego distances from a
// second run on the induced edge list, so it shares no code path with the
// Dijkstra/BFS implementation it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "posegraph/annotations.hpp"
#include "posegraph/graph.hpp"
#include "posegraph/skeleton.hpp"

namespace posegraph::testing {

inline WeightedPoseGraph make_graph(std::size_t n, const std::vector<EdgeKey>& edges,
                                    std::vector<double> lengths = {}) {
  if (lengths.empty()) lengths.assign(edges.size(), 1.0);
  return WeightedPoseGraph(Skeleton::from_edge_list(n, edges), std::move(lengths));
}

inline std::vector<EdgeKey> path_edges(std::size_t n) {
  std::vector<EdgeKey> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline std::vector<EdgeKey> cycle_edges(std::size_t n) {
  auto e = path_edges(n);
  e.emplace_back(n - 1, 0);
  return e;
}

inline std::vector<EdgeKey> complete_edges(std::size_t n) {
  std::vector<EdgeKey> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

inline std::vector<EdgeKey> star_edges(std::size_t leaves) {
  std::vector<EdgeKey> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return e;
}

/// K5 on vertices 0..4, vertex 4 joined to the path 5-6-7-8-9.
inline std::vector<EdgeKey> lollipop_edges() {
  auto e = complete_edges(5);
  e.emplace_back(4, 5);
  for (std::size_t i = 5; i < 9; ++i) e.emplace_back(i, i + 1);
  return e;
}

/// Random spanning tree plus extra random edges, lengths in [0.1, 10).
inline WeightedPoseGraph random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                                double extra_edge_probability = 0.2) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<EdgeKey> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.push_back(make_edge_key(order[i], order[pick(rng)]));
  }
  std::bernoulli_distribution extra(extra_edge_probability);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::find(edges.begin(), edges.end(), EdgeKey{a, b}) == edges.end() && extra(rng)) {
        edges.emplace_back(a, b);
      }
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  std::uniform_real_distribution<double> length(0.1, 10.0);
  std::vector<double> lengths;
  for (std::size_t i = 0; i < edges.size(); ++i) lengths.push_back(length(rng));
  return make_graph(n, edges, lengths);
}

inline double relative_error(double actual, double expected) {
  if (actual == expected) return 0.0;
  return std::fabs(actual - expected) / std::max(std::fabs(expected), 1e-300);
}

struct OracleWeights {
  std::vector<double> h;
  std::vector<double> vertex;
  std::vector<double> edge;
};

/// h per vertex (global when radius is empty) and the normalised weights,
/// computed from Floyd-Warshall alone.
inline OracleWeights oracle_weights(const WeightedPoseGraph& graph,
                                    std::optional<std::size_t> radius) {
  const std::size_t n = graph.vertex_count();
  const auto edges = graph.skeleton().edges();
  const auto lengths = graph.edge_lengths();
  const std::vector<double> unit(edges.size(), 1.0);
  const auto hops = oracle::all_pairs(n, edges, unit);

  OracleWeights out;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<long> local(n, -1);
    std::size_t count = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (!radius || hops[v][w] <= static_cast<double>(*radius)) local[w] = static_cast<long>(count++);
    }
    std::vector<EdgeDef> sub;
    std::vector<double> sub_lengths;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (local[edges[e].a] >= 0 && local[edges[e].b] >= 0) {
        sub.push_back({static_cast<std::size_t>(local[edges[e].a]),
                       static_cast<std::size_t>(local[edges[e].b])});
        sub_lengths.push_back(lengths[e]);
      }
    }
    const auto d = oracle::all_pairs(count, sub, sub_lengths);
    const auto self = static_cast<std::size_t>(local[v]);
    double harmonic = 0.0;
    for (std::size_t w = 0; w < count; ++w) {
      if (w != self && std::isfinite(d[self][w])) harmonic += 1.0 / d[self][w];
    }
    out.h.push_back(1.0 / harmonic);
  }
  const double total = std::accumulate(out.h.begin(), out.h.end(), 0.0);
  for (double h : out.h) out.vertex.push_back(h * static_cast<double>(n) / total);
  double edge_total = 0.0;
  for (const auto& e : edges) edge_total += std::max(out.h[e.a], out.h[e.b]);
  for (const auto& e : edges) {
    out.edge.push_back(std::max(out.h[e.a], out.h[e.b]) * static_cast<double>(edges.size()) /
                       edge_total);
  }
  return out;
}

/// Uniform coordinates in a 640x640 image, visibility uniform over {0, 1, 2},
/// every instance with a bounding box.
inline AnnotationCorpus random_corpus(std::mt19937_64& rng, std::size_t count, std::size_t keypoints) {
  std::uniform_real_distribution<double> coord(0.0, 640.0);
  std::uniform_int_distribution<int> vis(0, 2);
  std::uniform_real_distribution<double> side(10.0, 300.0);
  AnnotationCorpus corpus;
  for (std::size_t i = 0; i < count; ++i) {
    InstanceAnnotation inst{static_cast<std::int64_t>(i), {}, BoundingBox{0, 0, side(rng), side(rng)}};
    for (std::size_t k = 0; k < keypoints; ++k) {
      inst.keypoints.push_back({coord(rng), coord(rng), static_cast<Visibility>(vis(rng))});
    }
    corpus.push_back(std::move(inst));
  }
  return corpus;
}

}  // namespace posegraph::testing

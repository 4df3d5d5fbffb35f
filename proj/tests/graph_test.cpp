#include "posegraph/graph.hpp"

#include <random>

#include <gtest/gtest.h>

#include "posegraph/error.hpp"
#include "test_graphs.hpp"

namespace posegraph {
namespace {

using testing::make_graph;
using testing::path_edges;
using testing::random_connected_graph;
using testing::relative_error;

TEST(ShortestPaths, PathFromEnd) {
  const auto g = make_graph(3, path_edges(3));
  const auto row = shortest_paths_from(g, 0);
  EXPECT_EQ(row.source, 0u);
  EXPECT_EQ(row.distances, (std::vector<double>{0.0, 1.0, 2.0}));
}

TEST(ShortestPaths, TriangleDetourBeatsDirectEdge) {
  const auto g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}}, {1.0, 1.0, 3.0});
  EXPECT_EQ(shortest_paths_from(g, 0).distances[2], 2.0);
  EXPECT_EQ(oracle::all_pairs(g)[0][2], 2.0);
}

TEST(ShortestPaths, SourceIsZeroAndBadSourceThrows) {
  std::mt19937_64 rng(1);
  const auto g = random_connected_graph(rng, 8);
  for (std::size_t v = 0; v < 8; ++v) EXPECT_EQ(shortest_paths_from(g, v).distances[v], 0.0);
  try {
    shortest_paths_from(g, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidVertex);
  }
}

TEST(Oracle, SmallCases) {
  const auto p3 = oracle::all_pairs(make_graph(3, path_edges(3)));
  EXPECT_EQ(p3, (oracle::DistanceMatrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  const auto single = oracle::all_pairs(make_graph(1, {}));
  EXPECT_EQ(single, (oracle::DistanceMatrix{{0}}));
  try {
    oracle::all_pairs(make_graph(65, path_edges(65)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOracleTooLarge);
  }
}

TEST(ShortestPaths, AgreeWithOracleOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_connected_graph(rng, 2 + trial % 11, 0.3);
    const auto matrix = oracle::all_pairs(g);
    const AdjacencyGraph adjacency(g);
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
      const auto row = shortest_paths_from(adjacency, s);
      for (std::size_t t = 0; t < g.vertex_count(); ++t) {
        EXPECT_LE(relative_error(row.distances[t], matrix[s][t]), 1e-12);
        EXPECT_LE(relative_error(row.distances[t], shortest_paths_from(adjacency, t).distances[s]), 1e-12);
      }
      // triangle inequality along every edge
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [a, b] = g.skeleton().edges()[e];
        const double l = g.edge_lengths()[e];
        EXPECT_LE(row.distances[a], row.distances[b] + l + 1e-12);
        EXPECT_LE(row.distances[b], row.distances[a] + l + 1e-12);
      }
    }
  }
}

TEST(EgoGraph, PathExamples) {
  const auto p7 = make_graph(7, path_edges(7));
  const auto middle = ego_graph(p7, 3, 3);
  EXPECT_EQ(middle.vertices.size(), 7u);
  EXPECT_EQ(middle.edges.size(), 6u);

  const auto end = ego_graph(p7, 0, 3);
  EXPECT_EQ(end.vertices, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(end.edges.size(), 3u);
  EXPECT_EQ(end.graph.edge_count(), 3u);

  const auto zero = ego_graph(p7, 5, 0);
  EXPECT_EQ(zero.vertices, (std::vector<std::size_t>{5}));
  EXPECT_TRUE(zero.edges.empty());
  EXPECT_EQ(zero.local_center, 0u);

  EXPECT_THROW(ego_graph(p7, 7, 1), Error);
}

TEST(EgoGraph, RadiusCountsHopsNotLength) {
  // 0 -(100)- 1 -(0.01)- 2 : the long edge is still one hop
  const auto g = make_graph(3, path_edges(3), {100.0, 0.01});
  EXPECT_EQ(ego_graph(g, 0, 1).vertices, (std::vector<std::size_t>{0, 1}));
}

TEST(EgoGraph, InducedEdgesIncludeChords) {
  // square 0-1-2-3-0 plus chord 1-3; ball of radius 1 around 0 is {0,1,3}
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}});
  const auto ego = ego_graph(g, 0, 1);
  EXPECT_EQ(ego.vertices, (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(ego.edges, (std::vector<std::size_t>{0, 3, 4}));
}

TEST(EgoGraph, BallPropertiesOnRandomGraphs) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_connected_graph(rng, 3 + trial % 10);
    const std::size_t n = g.vertex_count();
    const auto hops = oracle::all_pairs(n, g.skeleton().edges(), std::vector<double>(g.edge_count(), 1.0));
    const AdjacencyGraph adjacency(g);
    const std::size_t diameter = hop_diameter(adjacency);
    const auto scaled = g.scaled(7.5);
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::size_t> previous;
      for (std::size_t r = 0; r <= diameter + 1; ++r) {
        const auto ego = ego_graph(g, adjacency, c, r);
        // exactly the hop ball
        std::vector<std::size_t> expected;
        for (std::size_t w = 0; w < n; ++w)
          if (hops[c][w] <= static_cast<double>(r)) expected.push_back(w);
        EXPECT_EQ(ego.vertices, expected);
        // monotone in the radius
        EXPECT_TRUE(std::includes(ego.vertices.begin(), ego.vertices.end(), previous.begin(), previous.end()));
        previous = ego.vertices;
        // unchanged by uniform scaling
        EXPECT_EQ(ego_graph(scaled, c, r).vertices, ego.vertices);
        if (r >= diameter) EXPECT_EQ(ego.vertices.size(), n);
      }
      const auto row = shortest_paths_from(g, c);
      const auto row_scaled = shortest_paths_from(scaled, c);
      for (std::size_t w = 0; w < n; ++w) {
        EXPECT_LE(relative_error(row_scaled.distances[w], 7.5 * row.distances[w]), 1e-12);
      }
    }
  }
}

TEST(HopDiameter, Basics) {
  EXPECT_EQ(hop_diameter(AdjacencyGraph(make_graph(7, path_edges(7)))), 6u);
  EXPECT_EQ(hop_diameter(AdjacencyGraph(make_graph(5, testing::complete_edges(5)))), 1u);
}

}  // namespace
}  // namespace posegraph

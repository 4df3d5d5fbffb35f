#include "posegraph/centrality.hpp"

#include <random>

#include <gtest/gtest.h>

#include "posegraph/error.hpp"
#include "test_graphs.hpp"

namespace posegraph {
namespace {

using testing::make_graph;
using testing::oracle_weights;
using testing::path_edges;
using testing::random_connected_graph;
using testing::relative_error;

TEST(Harmonic, SmallGraphs) {
  const auto p3 = make_graph(3, path_edges(3));
  EXPECT_DOUBLE_EQ(harmonic_h(p3, 0, Scope::global()).centrality, 1.5);
  EXPECT_DOUBLE_EQ(harmonic_h(p3, 1, Scope::global()).centrality, 2.0);
  EXPECT_DOUBLE_EQ(harmonic_h(p3, 1, Scope::global()).inverse, 0.5);

  const auto k4 = make_graph(4, testing::complete_edges(4));
  for (std::size_t v = 0; v < 4; ++v) EXPECT_DOUBLE_EQ(harmonic_h(k4, v, Scope::global()).centrality, 3.0);

  const auto c5 = make_graph(5, testing::cycle_edges(5));
  for (std::size_t v = 0; v < 5; ++v) EXPECT_DOUBLE_EQ(harmonic_h(c5, v, Scope::ego(3)).centrality, 3.0);

  const auto star = make_graph(4, testing::star_edges(3));
  EXPECT_DOUBLE_EQ(harmonic_h(star, 0, Scope::global()).centrality, 3.0);
  EXPECT_DOUBLE_EQ(harmonic_h(star, 2, Scope::global()).centrality, 2.0);
}

TEST(Harmonic, EgoRestrictsTheSum) {
  const auto p3 = make_graph(3, path_edges(3));
  EXPECT_DOUBLE_EQ(harmonic_h(p3, 0, Scope::ego(1)).centrality, 1.0);
  EXPECT_DOUBLE_EQ(harmonic_h(p3, 1, Scope::ego(1)).centrality, 2.0);
}

TEST(Harmonic, EgoDistancesUseOnlyTheInducedSubgraph) {
  // 0-1 is long (10), the detour 0-2-3-1 is short but vertex 3 is two hops
  // from 0, so inside ego(1) of 0 the distance to 1 stays 10.
  const auto g = make_graph(4, {{0, 1}, {0, 2}, {2, 3}, {3, 1}}, {10.0, 1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(harmonic_h(g, 0, Scope::ego(1)).centrality, 1.0 / 10.0 + 1.0);
  EXPECT_DOUBLE_EQ(harmonic_h(g, 0, Scope::global()).centrality, 1.0 / 3.0 + 1.0 + 0.5);
}

TEST(Harmonic, Errors) {
  const auto p3 = make_graph(3, path_edges(3));
  try {
    harmonic_h(p3, 0, Scope::ego(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
  const auto single = make_graph(1, {});
  try {
    harmonic_h(single, 0, Scope::global());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateScope);
  }
  EXPECT_THROW(harmonic_h(p3, 3, Scope::global()), Error);
}

TEST(Closeness, PathAndErrors) {
  const auto p3 = make_graph(3, path_edges(3));
  EXPECT_DOUBLE_EQ(closeness(p3, 0, Scope::global()), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(closeness(p3, 1, Scope::global()), 1.0);
  EXPECT_THROW(closeness(make_graph(1, {}), 0, Scope::global()), Error);
  const auto report = centrality_report(p3, Measure::kCloseness, Scope::global());
  EXPECT_DOUBLE_EQ(report.inverses[0], 1.5);
}

TEST(Harmonic, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_connected_graph(rng, 2 + trial % 12, 0.25);
    for (const auto radius : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                              std::optional<std::size_t>{2}, std::optional<std::size_t>{3}}) {
      const auto expected = oracle_weights(g, radius);
      const auto report =
          centrality_report(g, Measure::kHarmonic, radius ? Scope::ego(*radius) : Scope::global());
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        EXPECT_LE(relative_error(report.inverses[v], expected.h[v]), 1e-12);
      }
    }
  }
}

TEST(Harmonic, EgoEqualsGlobalOnceRadiusCoversDiameter) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(rng, 3 + trial % 9);
    const std::size_t diameter = hop_diameter(AdjacencyGraph(g));
    const auto global = centrality_report(g, Measure::kHarmonic, Scope::global());
    const auto ego = centrality_report(g, Measure::kHarmonic, Scope::ego(diameter));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      EXPECT_LE(relative_error(ego.values[v], global.values[v]), 1e-12);
    }
  }
}

TEST(Harmonic, PendantVertexHasLargerInverseThanItsNeighbour) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto base = random_connected_graph(rng, 3 + trial % 8);
    // unit lengths, then hang a pendant off vertex 0
    std::vector<EdgeKey> edges;
    for (const auto& e : base.skeleton().edges()) edges.emplace_back(e.a, e.b);
    const std::size_t n = base.vertex_count();
    edges.emplace_back(0, n);
    const auto g = make_graph(n + 1, edges);
    for (const auto& scope : {Scope::global(), Scope::ego(3)}) {
      const auto report = centrality_report(g, Measure::kHarmonic, scope);
      EXPECT_GT(report.inverses[n], report.inverses[0]);
    }
  }
}

TEST(Harmonic, ScalingLengthsScalesInverse) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(rng, 4 + trial % 8);
    for (double c : {0.1, 7.0, 1000.0}) {
      const auto scaled = g.scaled(c);
      for (const auto& scope : {Scope::global(), Scope::ego(2)}) {
        const auto a = centrality_report(g, Measure::kHarmonic, scope);
        const auto b = centrality_report(scaled, Measure::kHarmonic, scope);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          EXPECT_LE(relative_error(b.inverses[v], c * a.inverses[v]), 1e-12);
        }
      }
    }
  }
}

TEST(CentralityReport, ParallelMatchesSerialBitwise) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_connected_graph(rng, 40 + trial * 10, 0.05);
    for (const auto measure : {Measure::kHarmonic, Measure::kCloseness}) {
      for (const auto& scope : {Scope::global(), Scope::ego(3)}) {
        const auto parallel = centrality_report(g, measure, scope);
        const auto reference = serial::centrality_report(g, measure, scope);
        EXPECT_EQ(parallel.values, reference.values);
        EXPECT_EQ(parallel.inverses, reference.inverses);
        EXPECT_EQ(parallel.ego_vertices, reference.ego_vertices);
      }
    }
  }
}

TEST(CentralityReport, ParallelRethrowsErrors) {
  const auto single = make_graph(1, {});
  EXPECT_THROW(centrality_report(single, Measure::kHarmonic, Scope::global()), Error);
  EXPECT_THROW(centrality_report(make_graph(3, path_edges(3)), Measure::kHarmonic, Scope::ego(0)), Error);
}

TEST(CentralityReport, EgoVerticesRecorded) {
  const auto p7 = make_graph(7, path_edges(7));
  const auto report = centrality_report(p7, Measure::kHarmonic, Scope::ego(3));
  ASSERT_EQ(report.ego_vertices.size(), 7u);
  EXPECT_EQ(report.ego_vertices[0], (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(report.ego_vertices[3].size(), 7u);
  EXPECT_TRUE(centrality_report(p7, Measure::kHarmonic, Scope::global()).ego_vertices.empty());
}

}  // namespace
}  // namespace posegraph

#include "posegraph/centrality.hpp"

#include <cmath>
#include <exception>
#include <span>

#include "posegraph/error.hpp"

namespace posegraph {

namespace {

struct VertexScore {
  double value = 0.0;
  double inverse = 0.0;
  std::vector<std::size_t> ego_vertices;
};

void check_scope(const Scope& scope) {
  if (!scope.is_global() && scope.radius() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "ego scope needs a radius of at least 1");
  }
}

double harmonic_sum(std::span<const double> distances, std::size_t source) {
  double sum = 0.0;
  for (std::size_t w = 0; w < distances.size(); ++w) {
    if (w != source && distances[w] != kUnreachable) sum += 1.0 / distances[w];
  }
  return sum;
}

VertexScore score_vertex(const WeightedPoseGraph& graph, const AdjacencyGraph& adjacency,
                         std::size_t vertex, Measure measure, const Scope& scope) {
  VertexScore score;
  DistanceRow row;
  if (scope.is_global()) {
    row = shortest_paths_from(adjacency, vertex);
  } else {
    EgoGraph ego = ego_graph(graph, adjacency, vertex, scope.radius());
    row = shortest_paths_from(ego.graph, ego.local_center);
    score.ego_vertices = std::move(ego.vertices);
  }
  const auto& name = graph.skeleton().keypoints()[vertex].name;

  if (measure == Measure::kHarmonic) {
    score.value = harmonic_sum(row.distances, row.source);
    if (!(score.value > 0.0)) {
      throw Error(ErrorKind::kDegenerateScope,
                  "'" + name + "' reaches no other vertex within " + scope.name());
    }
  } else {
    if (row.distances.size() < 2) {
      throw Error(ErrorKind::kDegenerateScope, "'" + name + "' is alone in " + scope.name());
    }
    double total = 0.0;
    for (double d : row.distances) {
      if (d == kUnreachable) {
        throw Error(ErrorKind::kDegenerateScope,
                    "closeness of '" + name + "': scope is not connected");
      }
      total += d;
    }
    score.value = static_cast<double>(row.distances.size() - 1) / total;
  }
  score.inverse = 1.0 / score.value;
  return score;
}

CentralityReport assemble(Measure measure, const Scope& scope, std::vector<VertexScore> scores) {
  CentralityReport report{measure, scope, {}, {}, {}};
  report.values.reserve(scores.size());
  report.inverses.reserve(scores.size());
  for (auto& s : scores) {
    report.values.push_back(s.value);
    report.inverses.push_back(s.inverse);
    if (!scope.is_global()) report.ego_vertices.push_back(std::move(s.ego_vertices));
  }
  return report;
}

}  // namespace

std::string Scope::name() const {
  return is_global() ? "global" : "ego(" + std::to_string(radius()) + ")";
}

HarmonicValue harmonic_h(const WeightedPoseGraph& graph, std::size_t vertex, const Scope& scope) {
  check_scope(scope);
  const AdjacencyGraph adjacency(graph);
  const auto score = score_vertex(graph, adjacency, vertex, Measure::kHarmonic, scope);
  return {score.value, score.inverse};
}

double closeness(const WeightedPoseGraph& graph, std::size_t vertex, const Scope& scope) {
  check_scope(scope);
  const AdjacencyGraph adjacency(graph);
  return score_vertex(graph, adjacency, vertex, Measure::kCloseness, scope).value;
}

CentralityReport centrality_report(const WeightedPoseGraph& graph, Measure measure,
                                   const Scope& scope) {
  check_scope(scope);
  const AdjacencyGraph adjacency(graph);
  const auto n = static_cast<std::ptrdiff_t>(graph.vertex_count());
  std::vector<VertexScore> scores(graph.vertex_count());
  std::vector<std::exception_ptr> errors(graph.vertex_count());

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    try {
      scores[v] = score_vertex(graph, adjacency, static_cast<std::size_t>(v), measure, scope);
    } catch (...) {
      errors[v] = std::current_exception();
    }
  }
  // Report the lowest failing vertex, as the serial path would.
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return assemble(measure, scope, std::move(scores));
}

namespace serial {

CentralityReport centrality_report(const WeightedPoseGraph& graph, Measure measure,
                                   const Scope& scope) {
  check_scope(scope);
  const AdjacencyGraph adjacency(graph);
  std::vector<VertexScore> scores;
  scores.reserve(graph.vertex_count());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    scores.push_back(score_vertex(graph, adjacency, v, measure, scope));
  }
  return assemble(measure, scope, std::move(scores));
}

}  // namespace serial

}  // namespace posegraph

#include "posegraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "posegraph/error.hpp"

namespace posegraph {

namespace {

void check_vertex(std::size_t vertex, std::size_t vertex_count) {
  if (vertex >= vertex_count) {
    throw Error(ErrorKind::kInvalidVertex, "vertex " + std::to_string(vertex) +
                                               " out of range for " +
                                               std::to_string(vertex_count) + " vertices");
  }
}

}  // namespace

AdjacencyGraph::AdjacencyGraph(std::size_t vertex_count, std::span<const EdgeDef> edges,
                               std::span<const double> lengths)
    : offsets_(vertex_count + 1, 0), neighbors_(2 * edges.size()) {
  if (lengths.size() != edges.size()) {
    throw Error(ErrorKind::kMissingEdge, "adjacency needs one length per edge");
  }
  for (const auto& e : edges) {
    check_vertex(e.a, vertex_count);
    check_vertex(e.b, vertex_count);
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] += offsets_[v];
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    neighbors_[cursor[edges[i].a]++] = {edges[i].b, lengths[i]};
    neighbors_[cursor[edges[i].b]++] = {edges[i].a, lengths[i]};
  }
}

AdjacencyGraph::AdjacencyGraph(const WeightedPoseGraph& graph)
    : AdjacencyGraph(graph.vertex_count(), graph.skeleton().edges(), graph.edge_lengths()) {}

DistanceRow shortest_paths_from(const AdjacencyGraph& graph, std::size_t source) {
  const std::size_t n = graph.vertex_count();
  check_vertex(source, n);
  DistanceRow row{source, std::vector<double>(n, kUnreachable)};
  auto& dist = row.distances;

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;  // stale entry
    for (const auto& [w, length] : graph.neighbors(v)) {
      const double candidate = d + length;
      if (candidate < dist[w]) {
        dist[w] = candidate;
        heap.emplace(candidate, w);
      }
    }
  }
  return row;
}

DistanceRow shortest_paths_from(const WeightedPoseGraph& graph, std::size_t source) {
  return shortest_paths_from(AdjacencyGraph(graph), source);
}

std::vector<std::size_t> hop_distances(const AdjacencyGraph& graph, std::size_t source) {
  check_vertex(source, graph.vertex_count());
  std::vector<std::size_t> hops(graph.vertex_count(), kNoHops);
  std::deque<std::size_t> queue{source};
  hops[source] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& nb : graph.neighbors(v)) {
      if (hops[nb.vertex] == kNoHops) {
        hops[nb.vertex] = hops[v] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return hops;
}

std::size_t hop_diameter(const AdjacencyGraph& graph) {
  std::size_t diameter = 0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (std::size_t h : hop_distances(graph, v)) {
      if (h != kNoHops) diameter = std::max(diameter, h);
    }
  }
  return diameter;
}

EgoGraph ego_graph(const WeightedPoseGraph& graph, const AdjacencyGraph& adjacency,
                   std::size_t center, std::size_t radius) {
  const std::size_t n = graph.vertex_count();
  check_vertex(center, n);

  // Breadth-first ball, stopping expansion at the radius.
  std::vector<std::size_t> hops(n, kNoHops);
  std::deque<std::size_t> queue{center};
  hops[center] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (hops[v] == radius) continue;
    for (const auto& nb : adjacency.neighbors(v)) {
      if (hops[nb.vertex] == kNoHops) {
        hops[nb.vertex] = hops[v] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }

  std::vector<std::size_t> vertices;
  std::vector<std::size_t> local(n, kNoHops);
  for (std::size_t v = 0; v < n; ++v) {
    if (hops[v] != kNoHops) {
      local[v] = vertices.size();
      vertices.push_back(v);
    }
  }

  std::vector<std::size_t> edge_ids;
  std::vector<EdgeDef> local_edges;
  std::vector<double> local_lengths;
  const auto edges = graph.skeleton().edges();
  const auto lengths = graph.edge_lengths();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (local[edges[e].a] != kNoHops && local[edges[e].b] != kNoHops) {
      edge_ids.push_back(e);
      local_edges.push_back({local[edges[e].a], local[edges[e].b]});
      local_lengths.push_back(lengths[e]);
    }
  }

  const std::size_t local_center = local[center];
  AdjacencyGraph induced(vertices.size(), local_edges, local_lengths);
  return EgoGraph{center,         radius, std::move(vertices), std::move(edge_ids),
                  local_center, std::move(induced)};
}

EgoGraph ego_graph(const WeightedPoseGraph& graph, std::size_t center, std::size_t radius) {
  return ego_graph(graph, AdjacencyGraph(graph), center, radius);
}

}  // namespace posegraph

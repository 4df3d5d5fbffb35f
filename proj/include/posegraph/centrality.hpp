#pragma once

/// \file centrality.hpp
/// \brief Harmonic and closeness centrality over the whole pose graph or over
/// each vertex's own hop-limited ego graph.
///
/// Harmonic centrality of v is H(v) = sum over reachable w != v of 1 / d(v, w),
/// with d the length-weighted shortest-path distance inside the scope. The
/// weighting uses its inverse h = 1 / H: vertices far from the rest of their
/// neighbourhood get a large h, vertices inside dense clusters a small one.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "posegraph/graph.hpp"
#include "posegraph/skeleton.hpp"

namespace posegraph {

/// Where distances are measured: the whole graph, or the induced subgraph of
/// the vertices within `radius` hops of the vertex being scored.
class Scope {
 public:
  static Scope global() { return Scope(std::nullopt); }
  static Scope ego(std::size_t radius) { return Scope(radius); }

  bool is_global() const { return !radius_.has_value(); }
  std::size_t radius() const { return radius_.value_or(0); }
  std::string name() const;

  friend bool operator==(const Scope&, const Scope&) = default;

 private:
  explicit Scope(std::optional<std::size_t> radius) : radius_(radius) {}
  std::optional<std::size_t> radius_;
};

enum class Measure { kHarmonic, kCloseness };

struct HarmonicValue {
  double centrality = 0.0;  ///< H
  double inverse = 0.0;     ///< h = 1 / H
};

/// Throws kDegenerateScope when nothing else is reachable inside the scope
/// (H = 0), and kInvalidArgument for an ego scope of radius 0.
HarmonicValue harmonic_h(const WeightedPoseGraph& graph, std::size_t vertex, const Scope& scope);

/// (n_scope - 1) / sum of distances. Throws kDegenerateScope when the scope
/// holds a single vertex or some scope vertex is unreachable.
double closeness(const WeightedPoseGraph& graph, std::size_t vertex, const Scope& scope);

struct CentralityReport {
  Measure measure = Measure::kHarmonic;
  Scope scope = Scope::global();
  std::vector<double> values;    ///< H, or closeness.
  std::vector<double> inverses;  ///< h = 1 / value.
  /// Global vertex sets of each ego graph; empty for the global scope.
  std::vector<std::vector<std::size_t>> ego_vertices;
};

/// Per-vertex values, vertices evaluated in parallel (OpenMP when enabled).
/// Results are bit-identical to serial::centrality_report.
CentralityReport centrality_report(const WeightedPoseGraph& graph, Measure measure,
                                   const Scope& scope);

namespace serial {

/// Single-threaded reference for centrality_report.
CentralityReport centrality_report(const WeightedPoseGraph& graph, Measure measure,
                                   const Scope& scope);

}  // namespace serial

}  // namespace posegraph

#include "posegraph/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "posegraph/centrality.hpp"
#include "posegraph/error.hpp"

namespace posegraph {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_normalized(std::span<const double> weights, std::string_view what) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw Error(ErrorKind::kNormalization, std::string(what) + " weight " + std::to_string(w) +
                                                 " is not positive and finite");
    }
    sum += w;
  }
  if (std::fabs(sum - static_cast<double>(weights.size())) > kSumTolerance) {
    throw Error(ErrorKind::kNormalization, std::string(what) + " weights sum to " +
                                               std::to_string(sum) + ", expected " +
                                               std::to_string(weights.size()));
  }
}

}  // namespace

Scheme Scheme::parse(std::string_view name, std::size_t radius) {
  if (name == "local") {
    if (radius == 0) throw Error(ErrorKind::kInvalidArgument, "local scheme needs radius >= 1");
    return local(radius);
  }
  if (name == "global") return global();
  if (name == "equal") return equal();
  if (name == "crafted") return crafted();
  throw Error(ErrorKind::kInvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::string Scheme::name() const {
  switch (kind_) {
    case SchemeKind::kLocal: return "local(r=" + std::to_string(radius_) + ")";
    case SchemeKind::kGlobal: return "global";
    case SchemeKind::kEqual: return "equal";
    case SchemeKind::kCrafted: return "crafted";
  }
  return "unknown";
}

std::vector<double> scheme_vertex_values(const WeightedPoseGraph& graph, const Scheme& scheme) {
  switch (scheme.kind()) {
    case SchemeKind::kLocal:
      return centrality_report(graph, Measure::kHarmonic, Scope::ego(scheme.radius())).inverses;
    case SchemeKind::kGlobal:
      return centrality_report(graph, Measure::kHarmonic, Scope::global()).inverses;
    case SchemeKind::kEqual:
      return std::vector<double>(graph.vertex_count(), 1.0);
    case SchemeKind::kCrafted: {
      std::vector<double> values;
      values.reserve(graph.vertex_count());
      for (const auto& kp : graph.skeleton().keypoints()) values.push_back(kp.crafted_multiplier);
      return values;
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown scheme");
}

std::vector<double> normalize_to_count(std::span<const double> values) {
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(ErrorKind::kNormalization, "cannot normalise values summing to " + std::to_string(sum));
  }
  const double scale = static_cast<double>(values.size()) / sum;
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> vertex_weights(const WeightedPoseGraph& graph, const Scheme& scheme) {
  return normalize_to_count(scheme_vertex_values(graph, scheme));
}

std::vector<double> edge_weights(const WeightedPoseGraph& graph,
                                 std::span<const double> vertex_values) {
  if (vertex_values.size() != graph.vertex_count()) {
    throw Error(ErrorKind::kTableMismatch, std::to_string(vertex_values.size()) +
                                               " vertex values for " +
                                               std::to_string(graph.vertex_count()) + " keypoints");
  }
  std::vector<double> raw;
  raw.reserve(graph.edge_count());
  for (const auto& e : graph.skeleton().edges()) {
    raw.push_back(std::max(vertex_values[e.a], vertex_values[e.b]));
  }
  if (raw.empty()) return raw;
  return normalize_to_count(raw);
}

WeightTable build_weight_table(const WeightedPoseGraph& graph, const Scheme& scheme) {
  const auto values = scheme_vertex_values(graph, scheme);
  WeightTable table{scheme, normalize_to_count(values), edge_weights(graph, values)};
  check_normalized(table.vertex_weights, "keypoint");
  check_normalized(table.edge_weights, "connection");
  return table;
}

WeightSummary summarize(std::span<const double> weights) {
  if (weights.empty()) return {};
  const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
  return {*lo, *hi, *hi / *lo};
}

std::vector<SchemeComparisonRow> compare_schemes(const WeightedPoseGraph& graph,
                                                 std::size_t radius) {
  std::vector<SchemeComparisonRow> rows;
  for (const auto& scheme :
       {Scheme::local(radius), Scheme::global(), Scheme::equal(), Scheme::crafted()}) {
    auto table = build_weight_table(graph, scheme);
    const auto vertices = summarize(table.vertex_weights);
    const auto edges = summarize(table.edge_weights);
    rows.push_back({std::move(table), vertices, edges});
  }
  return rows;
}

}  // namespace posegraph

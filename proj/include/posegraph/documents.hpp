#pragma once

/// \file documents.hpp
/// \brief JSON documents exchanged through the command line: edge-length
/// statistics, weight tables and scheme comparisons.
///
/// Every writer takes a `meta` object that is stored verbatim under "meta".
/// Output is a pure function of its inputs.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "posegraph/annotations.hpp"
#include "posegraph/skeleton.hpp"
#include "posegraph/weights.hpp"

namespace posegraph {

/// {"meta", "skeleton", "mode", "edges": [{"a", "b", "count", "mean_length"}]}
std::string write_edge_stats(const EdgeLengthStats& stats, const Skeleton& skeleton,
                             AveragingMode mode, const nlohmann::json& meta);

/// Edges absent from the document come back uncovered (count 0). A missing
/// "count" means 1. Entries naming a non-edge throw kExtraEdge.
EdgeLengthStats read_edge_stats(std::string_view document, const Skeleton& skeleton);

/// {"meta", "skeleton", "scheme", "scheme_kind", "radius",
///  "keypoints": [{"name", "weight"}], "connections": [{"a", "b", "weight"}],
///  "summary": {"keypoints": {min, max, ratio}, "connections": {...}}}
std::string write_weight_table(const WeightTable& table, const Skeleton& skeleton,
                               const nlohmann::json& meta);

/// Reads a weight table back; keypoints and connections must match the
/// skeleton exactly (kTableMismatch otherwise).
WeightTable read_weight_table(std::string_view document, const Skeleton& skeleton);

/// {"meta", "skeleton", "schemes": [weight-table body + summaries]}
std::string write_comparison(const std::vector<SchemeComparisonRow>& rows,
                             const Skeleton& skeleton, const nlohmann::json& meta);

}  // namespace posegraph

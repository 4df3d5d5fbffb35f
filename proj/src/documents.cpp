#include "posegraph/documents.hpp"

#include <string>

#include "posegraph/error.hpp"

namespace posegraph {

using nlohmann::json;

namespace {

json parse_document(std::string_view document, std::string_view what) {
  try {
    return json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string(what) + ": " + e.what());
  }
}

std::size_t require_keypoint(const Skeleton& skeleton, const json& name, std::string_view what) {
  if (!name.is_string()) throw Error(ErrorKind::kMalformed, std::string(what) + ": keypoint name expected");
  const auto index = skeleton.find_keypoint(name.get<std::string>());
  if (!index) {
    throw Error(ErrorKind::kDanglingIndex,
                std::string(what) + ": unknown keypoint '" + name.get<std::string>() + "'");
  }
  return *index;
}

json summary_json(const WeightSummary& s) {
  return {{"min", s.min}, {"max", s.max}, {"ratio", s.ratio}};
}

std::string_view kind_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kLocal: return "local";
    case SchemeKind::kGlobal: return "global";
    case SchemeKind::kEqual: return "equal";
    case SchemeKind::kCrafted: return "crafted";
  }
  return "unknown";
}

json table_body(const WeightTable& table, const Skeleton& skeleton) {
  json keypoints = json::array();
  for (std::size_t v = 0; v < skeleton.keypoint_count(); ++v) {
    keypoints.push_back({{"name", skeleton.keypoints()[v].name}, {"weight", table.vertex_weights[v]}});
  }
  json connections = json::array();
  for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
    const auto& def = skeleton.edges()[e];
    connections.push_back({{"a", skeleton.keypoints()[def.a].name},
                           {"b", skeleton.keypoints()[def.b].name},
                           {"weight", table.edge_weights[e]}});
  }
  json body = {{"scheme", table.scheme.name()}, {"scheme_kind", kind_name(table.scheme.kind())}};
  if (table.scheme.kind() == SchemeKind::kLocal) body["radius"] = table.scheme.radius();
  body["keypoints"] = std::move(keypoints);
  body["connections"] = std::move(connections);
  body["summary"] = {{"keypoints", summary_json(summarize(table.vertex_weights))},
                     {"connections", summary_json(summarize(table.edge_weights))}};
  return body;
}

}  // namespace

std::string write_edge_stats(const EdgeLengthStats& stats, const Skeleton& skeleton,
                             AveragingMode mode, const json& meta) {
  json edges = json::array();
  for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
    const auto& def = skeleton.edges()[e];
    edges.push_back({{"a", skeleton.keypoints()[def.a].name},
                     {"b", skeleton.keypoints()[def.b].name},
                     {"count", stats.edges.at(e).count},
                     {"mean_length", stats.edges.at(e).mean_length}});
  }
  json doc = {{"meta", meta},
              {"skeleton", skeleton.name()},
              {"mode", to_string(mode)},
              {"covered", stats.covered_count()},
              {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

EdgeLengthStats read_edge_stats(std::string_view document, const Skeleton& skeleton) {
  const json doc = parse_document(document, "edge lengths");
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    throw Error(ErrorKind::kMalformed, "edge lengths: missing 'edges' array");
  }
  EdgeLengthStats stats;
  stats.edges.assign(skeleton.edge_count(), EdgeStat{});
  for (const auto& entry : doc["edges"]) {
    if (!entry.is_object() || !entry.contains("a") || !entry.contains("b") ||
        !entry.contains("mean_length") || !entry["mean_length"].is_number()) {
      throw Error(ErrorKind::kMalformed, "edge lengths: entries need 'a', 'b' and 'mean_length'");
    }
    const auto a = require_keypoint(skeleton, entry["a"], "edge lengths");
    const auto b = require_keypoint(skeleton, entry["b"], "edge lengths");
    const auto edge = skeleton.find_edge(a, b);
    if (!edge) {
      throw Error(ErrorKind::kExtraEdge, "edge lengths: '" + entry["a"].get<std::string>() + "-" +
                                             entry["b"].get<std::string>() +
                                             "' is not a skeleton edge");
    }
    std::size_t count = 1;
    if (entry.contains("count")) {
      if (!entry["count"].is_number_unsigned()) {
        throw Error(ErrorKind::kMalformed, "edge lengths: count must be a non-negative integer");
      }
      count = entry["count"].get<std::size_t>();
    }
    stats.edges[*edge] = {count, entry["mean_length"].get<double>()};
  }
  return stats;
}

std::string write_weight_table(const WeightTable& table, const Skeleton& skeleton, const json& meta) {
  if (table.vertex_weights.size() != skeleton.keypoint_count() ||
      table.edge_weights.size() != skeleton.edge_count()) {
    throw Error(ErrorKind::kTableMismatch, "weight table does not match skeleton '" + skeleton.name() + "'");
  }
  json doc = {{"meta", meta}, {"skeleton", skeleton.name()}};
  doc.update(table_body(table, skeleton));
  return doc.dump(2) + "\n";
}

WeightTable read_weight_table(std::string_view document, const Skeleton& skeleton) {
  const json doc = parse_document(document, "weight table");
  if (!doc.is_object() || !doc.contains("keypoints") || !doc["keypoints"].is_array() ||
      !doc.contains("connections") || !doc["connections"].is_array() ||
      !doc.contains("scheme_kind") || !doc["scheme_kind"].is_string()) {
    throw Error(ErrorKind::kMalformed, "weight table: needs 'scheme_kind', 'keypoints', 'connections'");
  }
  const auto kind = doc["scheme_kind"].get<std::string>();
  const std::size_t radius = doc.value("radius", kDefaultEgoRadius);
  WeightTable table{Scheme::parse(kind, radius), {}, {}};

  const auto& keypoints = doc["keypoints"];
  const auto& connections = doc["connections"];
  if (keypoints.size() != skeleton.keypoint_count() || connections.size() != skeleton.edge_count()) {
    throw Error(ErrorKind::kTableMismatch,
                "weight table has " + std::to_string(keypoints.size()) + " keypoints and " +
                    std::to_string(connections.size()) + " connections, skeleton '" +
                    skeleton.name() + "' has " + std::to_string(skeleton.keypoint_count()) +
                    " and " + std::to_string(skeleton.edge_count()));
  }
  table.vertex_weights.assign(skeleton.keypoint_count(), 0.0);
  for (std::size_t i = 0; i < keypoints.size(); ++i) {
    const auto v = require_keypoint(skeleton, keypoints[i].value("name", json()), "weight table");
    if (v != i) throw Error(ErrorKind::kTableMismatch, "weight table keypoints are out of skeleton order");
    table.vertex_weights[v] = keypoints[i].value("weight", 0.0);
  }
  table.edge_weights.assign(skeleton.edge_count(), 0.0);
  for (std::size_t i = 0; i < connections.size(); ++i) {
    const auto a = require_keypoint(skeleton, connections[i].value("a", json()), "weight table");
    const auto b = require_keypoint(skeleton, connections[i].value("b", json()), "weight table");
    const auto edge = skeleton.find_edge(a, b);
    if (!edge || *edge != i) {
      throw Error(ErrorKind::kTableMismatch, "weight table connection " + std::to_string(i) +
                                                 " does not match the skeleton edge list");
    }
    table.edge_weights[i] = connections[i].value("weight", 0.0);
  }
  return table;
}

std::string write_comparison(const std::vector<SchemeComparisonRow>& rows, const Skeleton& skeleton,
                             const json& meta) {
  json schemes = json::array();
  for (const auto& row : rows) schemes.push_back(table_body(row.table, skeleton));
  json doc = {{"meta", meta}, {"skeleton", skeleton.name()}, {"schemes", std::move(schemes)}};
  return doc.dump(2) + "\n";
}

}  // namespace posegraph

#include "posegraph/skeleton.hpp"

#include <cmath>
#include <deque>

#include "json.hpp"

#include "posegraph/error.hpp"

namespace posegraph {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

Skeleton::Skeleton(std::string name, std::vector<KeypointDef> keypoints,
                   std::vector<EdgeDef> edges)
    : name_(std::move(name)), keypoints_(std::move(keypoints)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < keypoints_.size(); ++i) {
    const auto& kp = keypoints_[i];
    if (kp.index != i) {
      fail(ErrorKind::kDanglingIndex, "keypoint '" + kp.name + "' has index " +
                                          std::to_string(kp.index) + ", expected " +
                                          std::to_string(i));
    }
    if (kp.name.empty()) fail(ErrorKind::kMalformed, "keypoint " + std::to_string(i) + " has no name");
    if (!positive_finite(kp.crafted_multiplier)) {
      fail(ErrorKind::kInvalidArgument,
           "crafted_multiplier of '" + kp.name + "' must be positive and finite");
    }
    if (!by_name_.emplace(kp.name, i).second) fail(ErrorKind::kDuplicateName, "'" + kp.name + "'");
  }
  const std::size_t n = keypoints_.size();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [a, b] = edges_[e];
    if (a >= n || b >= n) {
      fail(ErrorKind::kDanglingIndex, "edge " + std::to_string(e) + " (" + std::to_string(a) +
                                          ", " + std::to_string(b) + ") with " +
                                          std::to_string(n) + " keypoints");
    }
    if (a == b) fail(ErrorKind::kSelfLoop, "edge " + std::to_string(e) + " on '" + keypoints_[a].name + "'");
    if (!by_edge_.emplace(make_edge_key(a, b), e).second) {
      fail(ErrorKind::kDuplicateEdge, "'" + edge_label(e) + "'");
    }
  }
  if (n == 0) fail(ErrorKind::kMalformed, "skeleton '" + name_ + "' has no keypoints");
  if (!is_connected(n, edges_)) {
    fail(ErrorKind::kDisconnected, "skeleton '" + name_ + "' has more than one component");
  }
}

Skeleton Skeleton::from_edge_list(std::size_t keypoint_count, std::span<const EdgeKey> edges,
                                  std::string name) {
  std::vector<KeypointDef> kps;
  kps.reserve(keypoint_count);
  for (std::size_t i = 0; i < keypoint_count; ++i) kps.push_back({i, "v" + std::to_string(i), 1.0});
  std::vector<EdgeDef> defs;
  defs.reserve(edges.size());
  for (const auto& [a, b] : edges) defs.push_back({a, b});
  return Skeleton(std::move(name), std::move(kps), std::move(defs));
}

std::optional<std::size_t> Skeleton::find_keypoint(std::string_view name) const {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Skeleton::find_edge(std::size_t a, std::size_t b) const {
  if (auto it = by_edge_.find(make_edge_key(a, b)); it != by_edge_.end()) return it->second;
  return std::nullopt;
}

std::string Skeleton::edge_label(std::size_t edge) const {
  const auto& e = edges_.at(edge);
  return keypoints_.at(e.a).name + "-" + keypoints_.at(e.b).name;
}

bool is_connected(std::size_t vertex_count, std::span<const EdgeDef> edges) {
  if (vertex_count == 0) return true;
  std::vector<std::vector<std::size_t>> adjacent(vertex_count);
  for (const auto& e : edges) {
    adjacent[e.a].push_back(e.b);
    adjacent[e.b].push_back(e.a);
  }
  std::vector<bool> seen(vertex_count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adjacent[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        queue.push_back(w);
      }
    }
  }
  return visited == vertex_count;
}

Skeleton parse_skeleton(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    fail(ErrorKind::kMalformed, e.what());
  }
  if (!doc.is_object() || !doc.contains("keypoints") || !doc["keypoints"].is_array() ||
      !doc.contains("edges") || !doc["edges"].is_array()) {
    fail(ErrorKind::kMalformed, "skeleton needs 'keypoints' and 'edges' arrays");
  }
  std::string name = doc.value("name", std::string("skeleton"));

  std::vector<KeypointDef> keypoints;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& entry : doc["keypoints"]) {
    KeypointDef kp;
    kp.index = keypoints.size();
    if (entry.is_string()) {
      kp.name = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("name") && entry["name"].is_string()) {
      kp.name = entry["name"].get<std::string>();
      if (entry.contains("crafted_multiplier")) {
        if (!entry["crafted_multiplier"].is_number()) {
          fail(ErrorKind::kMalformed, "crafted_multiplier of '" + kp.name + "' is not a number");
        }
        kp.crafted_multiplier = entry["crafted_multiplier"].get<double>();
      }
    } else {
      fail(ErrorKind::kMalformed, "keypoint " + std::to_string(kp.index) + " has no name");
    }
    index.emplace(kp.name, kp.index);
    keypoints.push_back(std::move(kp));
  }

  auto resolve = [&](const json& ref, std::size_t edge) -> std::size_t {
    if (ref.is_string()) {
      const auto name = ref.get<std::string>();
      auto it = index.find(name);
      if (it == index.end()) {
        fail(ErrorKind::kDanglingIndex,
             "edge " + std::to_string(edge) + " references unknown keypoint '" + name + "'");
      }
      return it->second;
    }
    if (ref.is_number_unsigned()) return ref.get<std::size_t>();
    fail(ErrorKind::kMalformed, "edge " + std::to_string(edge) + " endpoint is not a keypoint name");
  };

  std::vector<EdgeDef> edges;
  for (const auto& entry : doc["edges"]) {
    const std::size_t e = edges.size();
    if (!entry.is_array() || entry.size() != 2) {
      fail(ErrorKind::kMalformed, "edge " + std::to_string(e) + " is not a pair");
    }
    edges.push_back({resolve(entry[0], e), resolve(entry[1], e)});
  }
  return Skeleton(std::move(name), std::move(keypoints), std::move(edges));
}

std::string serialize_skeleton(const Skeleton& skeleton) {
  json kps = json::array();
  for (const auto& kp : skeleton.keypoints()) {
    json entry = {{"name", kp.name}};
    if (kp.crafted_multiplier != 1.0) entry["crafted_multiplier"] = kp.crafted_multiplier;
    kps.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& e : skeleton.edges()) {
    edges.push_back(json::array({skeleton.keypoints()[e.a].name, skeleton.keypoints()[e.b].name}));
  }
  json doc = {{"name", skeleton.name()}, {"keypoints", std::move(kps)}, {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

WeightedPoseGraph::WeightedPoseGraph(Skeleton skeleton, std::vector<double> edge_lengths)
    : skeleton_(std::move(skeleton)), lengths_(std::move(edge_lengths)) {
  if (lengths_.size() != skeleton_.edge_count()) {
    fail(ErrorKind::kMissingEdge, std::to_string(lengths_.size()) + " lengths for " +
                                      std::to_string(skeleton_.edge_count()) + " edges");
  }
  for (std::size_t e = 0; e < lengths_.size(); ++e) {
    if (!positive_finite(lengths_[e])) {
      fail(ErrorKind::kInvalidLength, "'" + skeleton_.edge_label(e) + "' = " + std::to_string(lengths_[e]));
    }
  }
}

WeightedPoseGraph WeightedPoseGraph::scaled(double factor) const {
  if (!positive_finite(factor)) fail(ErrorKind::kInvalidArgument, "scale factor must be positive");
  std::vector<double> lengths(lengths_);
  for (double& l : lengths) l *= factor;
  return WeightedPoseGraph(skeleton_, std::move(lengths));
}

WeightedPoseGraph attach_lengths(Skeleton skeleton, const EdgeLengthMap& lengths) {
  std::vector<double> bound(skeleton.edge_count(), 0.0);
  for (const auto& [key, length] : lengths) {
    const auto edge = skeleton.find_edge(key.first, key.second);
    if (!edge) {
      const auto n = skeleton.keypoint_count();
      const auto name = [&](std::size_t i) {
        return i < n ? skeleton.keypoints()[i].name : std::to_string(i);
      };
      fail(ErrorKind::kExtraEdge, "'" + name(key.first) + "-" + name(key.second) + "' is not a skeleton edge");
    }
    bound[*edge] = length;
  }
  for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
    const auto& def = skeleton.edges()[e];
    if (!lengths.contains(make_edge_key(def.a, def.b))) {
      fail(ErrorKind::kMissingEdge, "'" + skeleton.edge_label(e) + "'");
    }
  }
  return WeightedPoseGraph(std::move(skeleton), std::move(bound));
}

WeightedPoseGraph with_uniform_lengths(Skeleton skeleton, double length) {
  std::vector<double> lengths(skeleton.edge_count(), length);
  return WeightedPoseGraph(std::move(skeleton), std::move(lengths));
}

}  // namespace posegraph

#include "posegraph/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <string>

#include "json.hpp"

#include "posegraph/error.hpp"
#include "posegraph/exact_sum.hpp"

namespace posegraph {

using nlohmann::json;

namespace {

// Instances per accumulation block. Fixed so the merge order never depends on
// the thread count.
constexpr std::size_t kBlockSize = 256;

std::string entry_label(const json& entry, std::size_t position) {
  if (entry.contains("id") && entry["id"].is_number_integer()) {
    return "annotation id " + std::to_string(entry["id"].get<std::int64_t>());
  }
  return "annotation #" + std::to_string(position);
}

struct EdgeAccumulator {
  std::size_t count = 0;
  ExactSum sum;
};

using BlockAccumulator = std::vector<EdgeAccumulator>;

double instance_scale(const InstanceAnnotation& instance, AveragingMode mode) {
  if (mode == AveragingMode::kRaw) return 1.0;
  if (!instance.bbox) {
    throw Error(ErrorKind::kMissingBBox, "annotation id " + std::to_string(instance.id) +
                                             " has no bbox for scale-normalized averaging");
  }
  const double area = instance.bbox->width * instance.bbox->height;
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw Error(ErrorKind::kMissingBBox,
                "annotation id " + std::to_string(instance.id) + " has an empty bbox");
  }
  return std::sqrt(area);
}

void accumulate(BlockAccumulator& acc, const InstanceAnnotation& instance,
                const Skeleton& skeleton, AveragingMode mode) {
  const auto edges = skeleton.edges();
  std::optional<double> scale;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& pa = instance.keypoints[edges[e].a];
    const auto& pb = instance.keypoints[edges[e].b];
    if (!pa.labeled() || !pb.labeled()) continue;
    if (!scale) scale = instance_scale(instance, mode);
    const double distance = std::hypot(pa.x - pb.x, pa.y - pb.y);
    acc[e].count += 1;
    acc[e].sum.add(mode == AveragingMode::kRaw ? distance : distance / *scale);
  }
}

EdgeLengthStats finish(const BlockAccumulator& acc, std::size_t corpus_size) {
  if (corpus_size == 0) throw Error(ErrorKind::kEmptyCorpus, "no annotations to average");
  EdgeLengthStats stats;
  stats.edges.reserve(acc.size());
  for (const auto& a : acc) {
    stats.edges.push_back(
        {a.count, a.count > 0 ? a.sum.value() / static_cast<double>(a.count) : 0.0});
  }
  if (stats.covered_count() == 0 && !acc.empty()) {
    throw Error(ErrorKind::kUncoveredEdge, "no edge has both endpoints labeled in any annotation");
  }
  return stats;
}

void check_instances(const AnnotationCorpus& corpus, const Skeleton& skeleton) {
  for (const auto& instance : corpus) {
    if (instance.keypoints.size() != skeleton.keypoint_count()) {
      throw Error(ErrorKind::kCountMismatch,
                  "annotation id " + std::to_string(instance.id) + " has " +
                      std::to_string(instance.keypoints.size()) + " keypoints, skeleton has " +
                      std::to_string(skeleton.keypoint_count()));
    }
  }
}

}  // namespace

std::size_t EdgeLengthStats::covered_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const EdgeStat& s) { return s.covered(); }));
}

std::string_view to_string(AveragingMode mode) {
  return mode == AveragingMode::kRaw ? "raw" : "scale-normalized";
}

AveragingMode parse_averaging_mode(std::string_view name) {
  if (name == "raw") return AveragingMode::kRaw;
  if (name == "scale-normalized" || name == "scale_normalized") return AveragingMode::kScaleNormalized;
  throw Error(ErrorKind::kInvalidArgument, "unknown averaging mode '" + std::string(name) + "'");
}

namespace {

// COCO-WholeBody keeps the body in "keypoints" and the other parts in
// separate arrays; they are concatenated in dataset order.
json flat_keypoints(const json& entry, std::size_t keypoint_count) {
  const auto& body = entry["keypoints"];
  static constexpr const char* kParts[] = {"foot_kpts", "face_kpts", "lefthand_kpts", "righthand_kpts"};
  if (body.size() >= 3 * keypoint_count ||
      !std::all_of(std::begin(kParts), std::end(kParts),
                   [&](const char* key) { return entry.contains(key) && entry[key].is_array(); })) {
    return body;
  }
  json flat = body;
  for (const char* key : kParts) {
    for (const auto& value : entry[key]) flat.push_back(value);
  }
  return flat;
}

}  // namespace

AnnotationCorpus parse_annotations(std::string_view document, const Skeleton& skeleton) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string("annotations: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("annotations") || !doc["annotations"].is_array()) {
    throw Error(ErrorKind::kMalformed, "annotations: missing 'annotations' array");
  }

  const std::size_t n = skeleton.keypoint_count();
  AnnotationCorpus corpus;
  corpus.reserve(doc["annotations"].size());
  std::size_t position = 0;
  for (const auto& entry : doc["annotations"]) {
    const auto label = entry_label(entry, position);
    if (!entry.is_object() || !entry.contains("keypoints") || !entry["keypoints"].is_array()) {
      throw Error(ErrorKind::kMalformed, label + " has no 'keypoints' array");
    }
    const json flat = flat_keypoints(entry, n);
    if (flat.size() != 3 * n) {
      throw Error(ErrorKind::kCountMismatch, label + " has " + std::to_string(flat.size()) +
                                                 " keypoint numbers, expected " +
                                                 std::to_string(3 * n));
    }
    InstanceAnnotation instance;
    instance.id = entry.contains("id") && entry["id"].is_number_integer()
                      ? entry["id"].get<std::int64_t>()
                      : static_cast<std::int64_t>(position);
    instance.keypoints.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = flat[3 * k];
      const auto& y = flat[3 * k + 1];
      const auto& v = flat[3 * k + 2];
      if (!x.is_number() || !y.is_number() || !v.is_number()) {
        throw Error(ErrorKind::kMalformed, label + " keypoint " + std::to_string(k) + " is not numeric");
      }
      const double flag = v.get<double>();
      if (flag != 0.0 && flag != 1.0 && flag != 2.0) {
        throw Error(ErrorKind::kInvalidVisibility,
                    label + " keypoint '" + skeleton.keypoints()[k].name + "' has visibility " +
                        v.dump());
      }
      KeypointObservation obs{x.get<double>(), y.get<double>(), static_cast<Visibility>(flag)};
      if (obs.labeled() && (!std::isfinite(obs.x) || !std::isfinite(obs.y))) {
        throw Error(ErrorKind::kMalformed, label + " keypoint '" + skeleton.keypoints()[k].name +
                                               "' has non-finite coordinates");
      }
      instance.keypoints.push_back(obs);
    }
    if (entry.contains("bbox") && !entry["bbox"].is_null()) {
      const auto& box = entry["bbox"];
      if (!box.is_array() || box.size() != 4 ||
          !std::all_of(box.begin(), box.end(), [](const json& j) { return j.is_number(); })) {
        throw Error(ErrorKind::kMalformed, label + " bbox is not [x, y, w, h]");
      }
      instance.bbox = BoundingBox{box[0].get<double>(), box[1].get<double>(),
                                  box[2].get<double>(), box[3].get<double>()};
    }
    corpus.push_back(std::move(instance));
    ++position;
  }
  return corpus;
}

EdgeLengthStats compute_edge_lengths(const AnnotationCorpus& corpus, const Skeleton& skeleton,
                                     AveragingMode mode) {
  check_instances(corpus, skeleton);
  const std::size_t blocks = (corpus.size() + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAccumulator> partial(blocks, BlockAccumulator(skeleton.edge_count()));
  std::vector<std::exception_ptr> errors(blocks);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    try {
      const std::size_t begin = static_cast<std::size_t>(b) * kBlockSize;
      const std::size_t end = std::min(corpus.size(), begin + kBlockSize);
      for (std::size_t i = begin; i < end; ++i) accumulate(partial[b], corpus[i], skeleton, mode);
    } catch (...) {
      errors[b] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  BlockAccumulator total(skeleton.edge_count());
  for (const auto& block : partial) {
    for (std::size_t e = 0; e < total.size(); ++e) {
      total[e].count += block[e].count;
      total[e].sum.merge(block[e].sum);
    }
  }
  return finish(total, corpus.size());
}

namespace serial {

EdgeLengthStats compute_edge_lengths(const AnnotationCorpus& corpus, const Skeleton& skeleton,
                                     AveragingMode mode) {
  check_instances(corpus, skeleton);
  BlockAccumulator total(skeleton.edge_count());
  for (const auto& instance : corpus) accumulate(total, instance, skeleton, mode);
  return finish(total, corpus.size());
}

}  // namespace serial

EdgeLengthMap stats_to_lengths(const EdgeLengthStats& stats, const Skeleton& skeleton,
                               std::optional<double> fallback) {
  if (stats.edges.size() != skeleton.edge_count()) {
    throw Error(ErrorKind::kTableMismatch, std::to_string(stats.edges.size()) +
                                               " edge statistics for " +
                                               std::to_string(skeleton.edge_count()) + " edges");
  }
  if (fallback && (!std::isfinite(*fallback) || !(*fallback > 0.0))) {
    throw Error(ErrorKind::kInvalidLength, "fallback length must be positive and finite");
  }
  double largest = 0.0;
  for (const auto& s : stats.edges) {
    if (s.covered()) largest = std::max(largest, s.mean_length);
  }
  const double floor = kZeroLengthClampFraction * largest;

  EdgeLengthMap lengths;
  for (std::size_t e = 0; e < stats.edges.size(); ++e) {
    const auto& def = skeleton.edges()[e];
    const auto& s = stats.edges[e];
    double length = 0.0;
    if (s.covered()) {
      length = s.mean_length > 0.0 ? s.mean_length : floor;
      if (!(length > 0.0)) {
        throw Error(ErrorKind::kInvalidLength,
                    "'" + skeleton.edge_label(e) + "': every covered edge has zero mean length");
      }
    } else if (fallback) {
      length = *fallback;
    } else {
      throw Error(ErrorKind::kUncoveredEdge,
                  "'" + skeleton.edge_label(e) + "' has no annotated instances and no fallback");
    }
    lengths.emplace(make_edge_key(def.a, def.b), length);
  }
  return lengths;
}

}  // namespace posegraph

#include "posegraph/loss.hpp"

#include <cmath>
#include <string>

#include "posegraph/error.hpp"

namespace posegraph {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + " must be positive and finite, got " +
                                                 std::to_string(value));
  }
}

}  // namespace

double bce_focal(int target, double predicted, double gamma) {
  if (target != 0 && target != 1) {
    throw Error(ErrorKind::kInvalidArgument, "confidence target must be 0 or 1");
  }
  if (!(predicted > 0.0 && predicted < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "predicted confidence must lie in (0, 1), got " + std::to_string(predicted));
  }
  if (!(gamma >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "focal gamma must be >= 0");
  const double p_t = target == 1 ? predicted : 1.0 - predicted;
  return std::pow(1.0 - p_t, gamma) * -std::log(p_t);
}

double laplace_loss(const Vec2& target, const Vec2& predicted, double spread) {
  require_positive(spread, "predicted spread");
  const double residual = std::hypot(target[0] - predicted[0], target[1] - predicted[1]);
  return residual / spread + std::log(spread);
}

double scale_loss(double target, double predicted, double spread) {
  require_positive(target, "scale");
  require_positive(predicted, "predicted scale");
  require_positive(spread, "scale spread");
  return std::fabs(1.0 - predicted / target) / spread + std::log(spread);
}

double type_loss(std::span<const FieldSample> samples, double gamma, double scale_spread) {
  double confidence = 0.0;
  double localization = 0.0;
  double scale = 0.0;
  for (const auto& s : samples) {
    confidence += bce_focal(s.confidence, s.predicted_confidence, gamma);
    localization += laplace_loss(s.vector, s.predicted_vector, s.predicted_spread);
    scale += scale_loss(s.scale, s.predicted_scale, scale_spread);
  }
  return confidence + localization + scale;
}

double weighted_sum(const std::map<std::size_t, double>& inner, std::span<const double> weights) {
  double total = 0.0;
  for (const auto& [type, value] : inner) {
    if (type >= weights.size()) {
      throw Error(ErrorKind::kMissingWeight, "no weight for keypoint type " + std::to_string(type));
    }
    total += weights[type] * value;
  }
  return total;
}

double weighted_cif_loss(const SamplesByType& samples, std::span<const double> weights,
                         double gamma, double scale_spread) {
  std::map<std::size_t, double> inner;
  for (const auto& [type, list] : samples) inner.emplace(type, type_loss(list, gamma, scale_spread));
  return weighted_sum(inner, weights);
}

}  // namespace posegraph

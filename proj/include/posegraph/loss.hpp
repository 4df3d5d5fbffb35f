#pragma once

/// \file loss.hpp
/// \brief Scalar evaluation of the per-type weighted composite intensity loss.
///
/// For keypoint type k with weight w_k the loss is
///   w_k * ( sum focal-BCE(c, c_hat) + sum Laplace(v, v_hat, b_hat)
///           + sum Laplace(1, s_hat / s, b_s) ),
/// summed over types. The three components carry no extra coefficients.
/// Laplace is the L2 form |residual| / b + log b with additive constants
/// dropped; that form is a reference choice and is reported as such.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace posegraph {

inline constexpr double kDefaultFocalGamma = 2.0;

using Vec2 = std::array<double, 2>;

/// One masked field location of a keypoint type.
struct FieldSample {
  int confidence = 1;             ///< c in {0, 1}
  double predicted_confidence{};  ///< c_hat in (0, 1)
  Vec2 vector{};                  ///< v
  Vec2 predicted_vector{};        ///< v_hat
  double predicted_spread = 1.0;  ///< b_hat > 0
  double scale = 1.0;             ///< s > 0
  double predicted_scale = 1.0;   ///< s_hat > 0
};

/// (1 - p_t)^gamma * -log(p_t), p_t = c_hat for c = 1 and 1 - c_hat for c = 0.
double bce_focal(int target, double predicted, double gamma = kDefaultFocalGamma);

/// ||v - v_hat|| / b_hat + log b_hat.
double laplace_loss(const Vec2& target, const Vec2& predicted, double spread);

/// |1 - s_hat / s| / b_s + log b_s.
double scale_loss(double target, double predicted, double spread);

/// Unweighted bracket for one keypoint type, summed left to right.
double type_loss(std::span<const FieldSample> samples, double gamma, double scale_spread);

/// Samples grouped by keypoint type index.
using SamplesByType = std::map<std::size_t, std::vector<FieldSample>>;

/// sum_k weights[k] * inner[k] over already evaluated per-type brackets.
double weighted_sum(const std::map<std::size_t, double>& inner, std::span<const double> weights);

/// sum_k weights[k] * type_loss(samples[k]). Types are visited in ascending
/// order. Throws kMissingWeight when a sample type has no weight.
double weighted_cif_loss(const SamplesByType& samples, std::span<const double> weights,
                         double gamma = kDefaultFocalGamma, double scale_spread = 1.0);

}  // namespace posegraph

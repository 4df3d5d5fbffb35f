#pragma once

#include <vector>

namespace posegraph {

/// Floating-point accumulator that tracks the exact sum of its inputs as a
/// non-overlapping expansion (Shewchuk) and rounds once on readout. The
/// result is the correctly rounded sum, so it does not depend on the order in
/// which values are added or on how partial accumulators are merged.
/// Inputs must be finite.
class ExactSum {
 public:
  void add(double x);
  void merge(const ExactSum& other);
  double value() const;

 private:
  std::vector<double> partials_;
};

}  // namespace posegraph

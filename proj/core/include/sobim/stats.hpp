#pragma once

#include <span>

namespace sobim {

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n - 1); 0 when n < 2
};

/// Mean and sample standard deviation with compensated summation, so the
/// result does not depend on how callers chunk the input across threads.
MeanStd mean_std(std::span<const double> xs);

/// Neumaier-compensated sum.
double stable_sum(std::span<const double> xs);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either column is constant.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace sobim

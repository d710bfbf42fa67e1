#pragma once

#include <span>

namespace elastic::metrics {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
  double se = 0.0;  // sd / sqrt(n)
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Student-t confidence interval mean +/- t(1 - (1-confidence)/2, n-1) * se.
// Throws InsufficientData for fewer than two values.
SummaryStats summarize(std::span<const double> values, double confidence = 0.95);

}  // namespace elastic::metrics

#include "elastic/metrics/summary.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "elastic/errors.hpp"

namespace elastic::metrics {

SummaryStats summarize(std::span<const double> values, double confidence) {
  if (values.size() < 2) throw InsufficientData("summary statistics need at least two values");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("confidence level must lie in (0, 1)");
  }

  SummaryStats s;
  s.n = values.size();
  const double n = static_cast<double>(s.n);

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;

  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / (n - 1.0));
  s.se = s.sd / std::sqrt(n);

  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 1.0 - (1.0 - confidence) / 2.0);
  s.ci_low = s.mean - t * s.se;
  s.ci_high = s.mean + t * s.se;
  return s;
}

}  // namespace elastic::metrics

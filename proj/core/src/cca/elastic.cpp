#include "elastic/cca/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastic/errors.hpp"

namespace elastic::cca {

double compute_ur(double rtt_current, double rtt_max) {
  if (!(rtt_max > 0.0)) {
    throw DomainError("utilization ratio needs rtt_max > 0, got " + std::to_string(rtt_max));
  }
  if (!(rtt_current > 0.0) || rtt_current > rtt_max) {
    throw DomainError("utilization ratio needs 0 < rtt_current <= rtt_max, got " +
                      std::to_string(rtt_current) + " / " + std::to_string(rtt_max));
  }
  return rtt_current / rtt_max;
}

double compute_underutilization(double ur) {
  if (!(ur > 0.0 && ur <= 1.0)) {
    throw DomainError("utilization ratio outside (0, 1]: " + std::to_string(ur));
  }
  return 1.0 - ur;
}

double compute_delta(const RttState& rtt) {
  if (!rtt.has_sample()) throw DomainError("weighting function needs at least one RTT sample");
  compute_ur(rtt.current, rtt.max);
  return rtt.max / rtt.current;
}

double newton_sqrt(double x, double tol) {
  if (!(x >= 0.0)) throw DomainError("square root of negative value " + std::to_string(x));
  if (!(tol > 0.0)) throw DomainError("square root tolerance must be positive");
  if (!std::isfinite(x)) throw DomainError("square root of non-finite value");
  if (x == 0.0) return 0.0;

  // Both starting points lie above sqrt(x), so the iterates decrease
  // monotonically; a non-decreasing step means precision is exhausted.
  double r = x >= 1.0 ? x : 1.0;
  const double bound = tol * x;
  for (int i = 0; i < kNewtonMaxIterations; ++i) {
    if (std::abs(r * r - x) <= bound) return r;
    const double next = 0.5 * (r + x / r);
    if (next >= r) return r;
    r = next;
  }
  return r;
}

double compute_wwf(const RttState& rtt, double cwnd, double tolerance) {
  if (!(cwnd >= 1.0)) throw DomainError("WWF needs cwnd >= 1, got " + std::to_string(cwnd));
  return newton_sqrt(compute_delta(rtt) * cwnd, tolerance);
}

ElasticComputation evaluate(const RttState& rtt, double cwnd, double tolerance) {
  ElasticComputation out;
  out.ur = compute_ur(rtt.current, rtt.max);
  out.under_ur = compute_underutilization(out.ur);
  out.delta = compute_delta(rtt);
  out.cwnd_est = out.delta * cwnd;
  out.wwf = compute_wwf(rtt, cwnd, tolerance);
  return out;
}

RttState update_rtt_bounds(RttState rtt, double send_time, double now) {
  if (!(now > send_time)) {
    throw MalformedEvent("RTT sample needs now > send_time, got now=" + std::to_string(now) +
                         " send_time=" + std::to_string(send_time));
  }
  rtt.current = now - send_time;
  rtt.base = std::min(rtt.base, rtt.current);
  rtt.max = std::max(rtt.max, rtt.current);
  return rtt;
}

CcaState elastic_ca_step(CcaState state) {
  double tolerance = 1e-12;
  if (const auto* p = std::get_if<ElasticParams>(&state.params)) tolerance = p->sqrt_tolerance;

  const double wwf = state.rtt.has_sample() ? compute_wwf(state.rtt, state.cwnd, tolerance)
                                            : newton_sqrt(state.cwnd, tolerance);
  state.cwnd += wwf / state.cwnd;
  return state;
}

}  // namespace elastic::cca

#pragma once

// Elastic-TCP congestion avoidance.
//
// The sender measures how full the path is from its own RTT samples:
//
//   UR    = rtt_current / rtt_max         utilization ratio, in (0, 1]
//   1-UR                                  under-utilized share
//   Delta = rtt_max / rtt_current = 1/UR  weighting function, in [1, rtt_max/rtt_base]
//   WWF   = sqrt(Delta * cwnd)            window-correlated weighting function
//
// and grows cwnd by WWF / cwnd on every new ACK. Over one RTT of cwnd ACKs
// the aggregate growth is roughly WWF, i.e. sqrt(cwnd) on a full path and
// up to sqrt(cwnd * rtt_max / rtt_base) on an empty one.

#include "elastic/cca/core.hpp"

namespace elastic::cca {

inline constexpr int kNewtonMaxIterations = 60;

struct ElasticComputation {
  double ur = 1.0;
  double under_ur = 0.0;
  double delta = 1.0;
  double cwnd_est = 1.0;
  double wwf = 1.0;
};

double compute_ur(double rtt_current, double rtt_max);
double compute_underutilization(double ur);
double compute_delta(const RttState& rtt);
double compute_wwf(const RttState& rtt, double cwnd, double tolerance = 1e-12);
ElasticComputation evaluate(const RttState& rtt, double cwnd, double tolerance = 1e-12);

// Newton-Raphson square root. Returns r with |r*r - x| <= tol * x (which
// implies the looser tol * max(1, x) bound),
// or the fully converged iterate if that bound is below double precision.
// Starts from x (x >= 1) or 1 (x < 1); at most kNewtonMaxIterations steps.
double newton_sqrt(double x, double tol = 1e-12);

RttState update_rtt_bounds(RttState rtt, double send_time, double now);

// cwnd' = cwnd + WWF / cwnd. Expects the RTT bounds to already include the
// sample of the ACK being processed. With no sample yet, Delta is taken as 1.
CcaState elastic_ca_step(CcaState state);

}  // namespace elastic::cca

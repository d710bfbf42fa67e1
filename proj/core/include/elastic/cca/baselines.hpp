#pragma once

// Comparison algorithms: NewReno, Cubic, Compound TCP and Agile-SD.

#include "elastic/cca/core.hpp"

namespace elastic::cca {

// cwnd' = cwnd + alpha / cwnd.
CcaState reno_ca_step(CcaState state, double alpha = 1.0);

// Cubic target window W(t) = C (t - t_last_loss - K)^3 + w_max with
// K = cbrt(w_max * cubic_beta / C).
double cubic_window(const CubicParams& params, double t);
double cubic_k(const CubicParams& params);

// Moves cwnd toward W(now + rtt_base): (W - cwnd) / cwnd per ACK, capped at
// 0.5 per ACK; 0.01 / cwnd when already above target.
CcaState cubic_ca_step(CcaState state, double now);

// Vegas-style queue estimate: (cwnd/rtt_base - cwnd/rtt) * rtt_base.
double vegas_estimate(double cwnd, double rtt_base, double rtt);

// Reno component grows by 1/win per ACK. Once per round (win ACKs) the
// delay component is updated: binomial growth max(alpha*win^k - 1, 0) while
// the queue estimate stays below gamma, otherwise dwnd -= zeta * estimate,
// clamped at 0.
CcaState ctcp_ca_step(CcaState state);

// lambda = clamp(lambda_max * (w_loss - cwnd) / (w_loss - w_degraded), 1, lambda_max)
double agile_lambda(const AgileParams& params, double cwnd);

// cwnd' = cwnd + lambda / cwnd.
CcaState agile_ca_step(CcaState state);

}  // namespace elastic::cca

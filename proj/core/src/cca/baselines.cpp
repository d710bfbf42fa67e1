#include "elastic/cca/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "elastic/errors.hpp"

namespace elastic::cca {

CcaState reno_ca_step(CcaState state, double alpha) {
  state.cwnd += alpha / state.cwnd;
  return state;
}

double cubic_k(const CubicParams& params) {
  return std::cbrt(params.w_max * params.cubic_beta / params.c_const);
}

double cubic_window(const CubicParams& params, double t) {
  const double offset = t - params.t_last_loss - cubic_k(params);
  return params.c_const * offset * offset * offset + params.w_max;
}

CcaState cubic_ca_step(CcaState state, double now) {
  auto& p = std::get<CubicParams>(state.params);
  if (!p.epoch_started) {
    p.epoch_started = true;
    p.t_last_loss = now;
    if (state.cwnd >= p.w_max) {
      // No useful loss history: start on the convex side of the curve.
      p.w_max = state.cwnd;
      p.t_last_loss = now - cubic_k(p);
    }
  }
  const double lookahead = state.rtt.has_sample() ? state.rtt.base : 0.0;
  const double target = cubic_window(p, now + lookahead);
  const double inc = target > state.cwnd ? std::min((target - state.cwnd) / state.cwnd, 0.5)
                                         : 0.01 / state.cwnd;
  state.cwnd += inc;
  return state;
}

double vegas_estimate(double cwnd, double rtt_base, double rtt) {
  if (!(rtt_base > 0.0) || !(rtt > 0.0)) {
    throw DomainError("Vegas estimate needs positive RTTs");
  }
  return std::max(0.0, (cwnd / rtt_base - cwnd / rtt) * rtt_base);
}

CcaState ctcp_ca_step(CcaState state) {
  auto& p = std::get<CtcpParams>(state.params);
  const double win = state.cwnd;

  p.reno_wnd += 1.0 / win;
  if (state.rtt.has_sample()) {
    p.round_min_rtt =
        p.round_min_rtt > 0.0 ? std::min(p.round_min_rtt, state.rtt.current) : state.rtt.current;
  }
  p.round_acks += 1.0;

  if (p.round_acks >= win) {
    p.vegas_delta = p.round_min_rtt > 0.0
                        ? vegas_estimate(win, state.rtt.base, p.round_min_rtt)
                        : 0.0;
    if (p.vegas_delta < p.gamma) {
      p.dwnd += std::max(p.alpha * std::pow(win, p.k) - 1.0, 0.0);
    } else {
      p.dwnd = std::max(p.dwnd - p.zeta * p.vegas_delta, 0.0);
    }
    p.round_acks = 0.0;
    p.round_min_rtt = 0.0;
  }

  state.cwnd = p.reno_wnd + p.dwnd;
  return state;
}

double agile_lambda(const AgileParams& params, double cwnd) {
  if (!(params.w_loss > params.w_degraded)) return 1.0;
  const double raw =
      params.lambda_max * (params.w_loss - cwnd) / (params.w_loss - params.w_degraded);
  return std::clamp(raw, 1.0, params.lambda_max);
}

CcaState agile_ca_step(CcaState state) {
  auto& p = std::get<AgileParams>(state.params);
  p.lambda = agile_lambda(p, state.cwnd);
  state.cwnd += p.lambda / state.cwnd;
  return state;
}

}  // namespace elastic::cca

#include "elastic/cca/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastic/cca/baselines.hpp"
#include "elastic/cca/elastic.hpp"
#include "elastic/errors.hpp"

namespace elastic::cca {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Elastic follows its pseudocode and only samples RTT in congestion
// avoidance; the baselines sample whenever a clean sample arrives.
bool samples_rtt_in_slow_start(const CcaState& state) noexcept {
  return state.algorithm() != Algorithm::Elastic;
}

CcaState congestion_avoidance_step(CcaState state, const AckNew& ack) {
  switch (state.algorithm()) {
    case Algorithm::NewReno: {
      const double alpha = std::get<RenoParams>(state.params).alpha;
      return reno_ca_step(std::move(state), alpha);
    }
    case Algorithm::Elastic:
      return elastic_ca_step(std::move(state));
    case Algorithm::Cubic:
      return cubic_ca_step(std::move(state), ack.now);
    case Algorithm::Ctcp:
      return ctcp_ca_step(std::move(state));
    case Algorithm::Agile:
      return agile_ca_step(std::move(state));
  }
  return state;
}

CcaState on_new_ack(CcaState state, const AckNew& ack) {
  if (!(ack.now >= ack.send_time)) {
    throw MalformedEvent("ACK timestamp " + std::to_string(ack.now) +
                         " precedes its send time " + std::to_string(ack.send_time));
  }
  state.dup_acks = 0;
  const bool usable_sample = ack.rtt_sample && ack.now > ack.send_time;

  switch (state.phase) {
    case Phase::SlowStart:
      if (usable_sample && samples_rtt_in_slow_start(state)) {
        state.rtt = update_rtt_bounds(state.rtt, ack.send_time, ack.now);
      }
      return slow_start_step(std::move(state));

    case Phase::FastRecovery:
      // Recovery ends on the first ACK that advances the window; the
      // deflated window already equals ssthresh.
      state.phase = Phase::CongestionAvoidance;
      return state;

    case Phase::CongestionAvoidance:
      if (usable_sample) {
        state.rtt = update_rtt_bounds(state.rtt, ack.send_time, ack.now);
      }
      return congestion_avoidance_step(std::move(state), ack);
  }
  return state;
}

}  // namespace

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::SlowStart: return "slow_start";
    case Phase::CongestionAvoidance: return "congestion_avoidance";
    case Phase::FastRecovery: return "fast_recovery";
  }
  return "unknown";
}

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::NewReno: return "newreno";
    case Algorithm::Elastic: return "elastic";
    case Algorithm::Cubic: return "cubic";
    case Algorithm::Ctcp: return "ctcp";
    case Algorithm::Agile: return "agile";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {Algorithm::NewReno, Algorithm::Elastic, Algorithm::Cubic, Algorithm::Ctcp,
                 Algorithm::Agile}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

Algorithm algorithm_of(const AlgoParams& params) noexcept {
  return std::visit(Overloaded{
                        [](const RenoParams&) { return Algorithm::NewReno; },
                        [](const ElasticParams&) { return Algorithm::Elastic; },
                        [](const CubicParams&) { return Algorithm::Cubic; },
                        [](const CtcpParams&) { return Algorithm::Ctcp; },
                        [](const AgileParams&) { return Algorithm::Agile; },
                    },
                    params);
}

double default_beta(Algorithm algorithm) noexcept {
  return algorithm == Algorithm::Cubic ? 0.7 : 0.5;
}

CcaState make_initial_state(Algorithm algorithm, const CcaOptions& options) {
  CcaState state;
  state.cwnd = options.initial_cwnd;
  state.ssthresh = options.initial_ssthresh;
  state.beta = options.beta.value_or(default_beta(algorithm));

  switch (algorithm) {
    case Algorithm::NewReno:
      state.params = RenoParams{.alpha = options.reno_alpha};
      break;
    case Algorithm::Elastic:
      state.params = ElasticParams{.sqrt_tolerance = options.sqrt_tolerance};
      break;
    case Algorithm::Cubic:
      state.params = CubicParams{.c_const = options.cubic_c, .cubic_beta = options.cubic_beta};
      if (!options.beta) state.beta = 1.0 - options.cubic_beta;
      break;
    case Algorithm::Ctcp: {
      CtcpParams p;
      p.reno_wnd = state.cwnd;
      p.zeta = options.ctcp_zeta;
      p.alpha = options.ctcp_alpha;
      p.k = options.ctcp_k;
      p.gamma = options.ctcp_gamma;
      state.params = p;
      break;
    }
    case Algorithm::Agile:
      state.params = AgileParams{.lambda = 1.0, .lambda_max = options.agile_lambda_max};
      break;
  }
  validate(state);
  return state;
}

CcaState dispatch(CcaState state, const CcaEvent& event) {
  return std::visit(
      Overloaded{
          [&](const AckNew& ack) { return on_new_ack(std::move(state), ack); },
          [&](const AckDup& dup) {
            state.dup_acks = dup.count;
            if (dup.count >= kDupAckThreshold && state.phase != Phase::FastRecovery) {
              return multiplicative_decrease(std::move(state), LossSignal::TripleDupAck);
            }
            return state;
          },
          [&](const LossTimeout&) {
            return multiplicative_decrease(std::move(state), LossSignal::Timeout);
          },
      },
      event);
}

CcaState slow_start_step(CcaState state) {
  state.cwnd += 1.0;
  if (state.cwnd >= state.ssthresh) state.phase = Phase::CongestionAvoidance;
  if (auto* ctcp = std::get_if<CtcpParams>(&state.params)) {
    ctcp->reno_wnd = state.cwnd - ctcp->dwnd;
  }
  return state;
}

CcaState multiplicative_decrease(CcaState state, LossSignal signal) {
  const double before = state.cwnd;

  if (signal == LossSignal::TripleDupAck) {
    state.cwnd = std::max(kMinWindowAfterLoss, state.beta * before);
    state.ssthresh = state.cwnd;
    state.phase = Phase::FastRecovery;
  } else {
    state.ssthresh = std::max(kMinWindowAfterLoss, state.beta * before);
    state.cwnd = kMinWindowAfterLoss;
    state.phase = Phase::SlowStart;
    state.dup_acks = 0;
  }

  std::visit(Overloaded{
                 [](RenoParams&) {},
                 [](ElasticParams&) {},
                 [&](CubicParams& p) {
                   p.w_max = std::max(before, kMinWindowAfterLoss);
                   p.epoch_started = false;
                 },
                 [&](CtcpParams& p) {
                   p.reno_wnd = signal == LossSignal::Timeout
                                    ? state.cwnd
                                    : std::min(p.reno_wnd * state.beta, state.cwnd);
                   p.dwnd = state.cwnd - p.reno_wnd;
                   p.round_acks = 0.0;
                   p.round_min_rtt = 0.0;
                 },
                 [&](AgileParams& p) {
                   p.w_loss = before;
                   p.w_degraded =
                       signal == LossSignal::Timeout ? state.ssthresh : state.cwnd;
                   p.lambda = p.lambda_max;
                 },
             },
             state.params);
  return state;
}

std::int64_t allowed_in_flight(const CcaState& state) noexcept {
  constexpr double kCap = 9.0e18;
  return static_cast<std::int64_t>(std::floor(std::min(state.cwnd, kCap)));
}

void validate(const CcaState& state) {
  if (!std::isfinite(state.cwnd) || state.cwnd < 1.0) {
    throw DomainError("cwnd must be finite and >= 1, got " + std::to_string(state.cwnd));
  }
  if (!(state.ssthresh > 0.0)) throw DomainError("ssthresh must be positive");
  if (!(state.beta > 0.0 && state.beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1), got " + std::to_string(state.beta));
  }
  const auto& rtt = state.rtt;
  if (rtt.has_sample() &&
      !(rtt.base > 0.0 && rtt.base <= rtt.current && rtt.current <= rtt.max)) {
    throw DomainError("RTT record violates 0 < base <= current <= max");
  }
  std::visit(Overloaded{
                 [](const RenoParams& p) {
                   if (!(p.alpha > 0.0)) throw DomainError("reno alpha must be positive");
                 },
                 [](const ElasticParams& p) {
                   if (!(p.sqrt_tolerance > 0.0)) throw DomainError("sqrt tolerance must be positive");
                 },
                 [](const CubicParams& p) {
                   if (!(p.c_const > 0.0)) throw DomainError("cubic C must be positive");
                   if (!(p.cubic_beta > 0.0 && p.cubic_beta < 1.0)) {
                     throw DomainError("cubic beta must lie in (0, 1)");
                   }
                   if (p.w_max < kMinWindowAfterLoss) throw DomainError("cubic w_max must be >= 2");
                 },
                 [](const CtcpParams& p) {
                   if (p.dwnd < 0.0) throw DomainError("ctcp dwnd must be >= 0");
                   if (!(p.zeta > 0.0)) throw DomainError("ctcp zeta must be positive");
                 },
                 [](const AgileParams& p) {
                   if (!(p.lambda_max >= 1.0)) throw DomainError("agile lambda_max must be >= 1");
                   if (p.lambda < 1.0 || p.lambda > p.lambda_max) {
                     throw DomainError("agile lambda outside [1, lambda_max]");
                   }
                 },
             },
             state.params);
}

}  // namespace elastic::cca

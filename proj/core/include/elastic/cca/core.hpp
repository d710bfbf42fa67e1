#pragma once

// Congestion-control plugin contract and the machinery shared by every
// algorithm: the per-flow state record, the event alphabet, slow start,
// and the loss reaction.
//
// All windows are in packets and kept real-valued; the sender's in-flight
// permit is floor(cwnd). Times are seconds.

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <variant>

namespace elastic::cca {

enum class Phase : std::uint8_t { SlowStart, CongestionAvoidance, FastRecovery };

std::string_view to_string(Phase phase) noexcept;

enum class Algorithm : std::uint8_t { NewReno, Elastic, Cubic, Ctcp, Agile };

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

// Minimum / maximum / latest round-trip time seen on a connection.
struct RttState {
  // Large initializer for the minimum, so the first sample always wins.
  static constexpr double kUnsetBase = 2147483647.0;  // 0x7FFFFFFF

  double base = kUnsetBase;
  double max = 0.0;
  double current = 0.0;

  bool has_sample() const noexcept { return max > 0.0; }
  friend bool operator==(const RttState&, const RttState&) = default;
};

// Reno / NewReno: Inc = alpha / cwnd per ACK.
struct RenoParams {
  double alpha = 1.0;
  friend bool operator==(const RenoParams&, const RenoParams&) = default;
};

struct ElasticParams {
  // Relative tolerance handed to the Newton-Raphson square root.
  double sqrt_tolerance = 1e-12;
  friend bool operator==(const ElasticParams&, const ElasticParams&) = default;
};

struct CubicParams {
  double c_const = 0.4;
  // Fractional window reduction at loss (cwnd -> (1 - cubic_beta) * w_max).
  double cubic_beta = 0.3;
  double w_max = 2.0;
  double t_last_loss = 0.0;
  // Whether t_last_loss has been anchored to an ACK since the last loss.
  bool epoch_started = false;
  friend bool operator==(const CubicParams&, const CubicParams&) = default;
};

struct CtcpParams {
  double reno_wnd = 2.0;  // loss-based component
  double dwnd = 0.0;      // delay-based component, >= 0
  double zeta = 0.1;
  double alpha = 0.125;   // binomial gain: dwnd += alpha * win^k - 1 per RTT
  double k = 0.75;
  double gamma = 30.0;    // queued-packet threshold for "queueing detected"
  double vegas_delta = 0.0;
  // Round bookkeeping for the once-per-RTT dwnd update.
  double round_acks = 0.0;
  double round_min_rtt = 0.0;
  friend bool operator==(const CtcpParams&, const CtcpParams&) = default;
};

struct AgileParams {
  double lambda = 1.0;
  double lambda_max = 3.0;
  double w_loss = 0.0;      // window just before the last decrease
  double w_degraded = 0.0;  // window just after the last decrease
  friend bool operator==(const AgileParams&, const AgileParams&) = default;
};

using AlgoParams =
    std::variant<RenoParams, ElasticParams, CubicParams, CtcpParams, AgileParams>;

Algorithm algorithm_of(const AlgoParams& params) noexcept;

struct CcaState {
  double cwnd = 2.0;
  double ssthresh = std::numeric_limits<double>::infinity();
  Phase phase = Phase::SlowStart;
  RttState rtt{};
  // Retained fraction on a loss: cwnd' = max(2, beta * cwnd).
  double beta = 0.5;
  int dup_acks = 0;
  AlgoParams params = ElasticParams{};

  Algorithm algorithm() const noexcept { return algorithm_of(params); }
  friend bool operator==(const CcaState&, const CcaState&) = default;
};

// A cumulative ACK that advanced the left edge of the window.
struct AckNew {
  double send_time = 0.0;  // echoed send timestamp of the triggering segment
  double now = 0.0;
  int acked = 1;
  // False when the triggering segment was a retransmission; the echoed
  // timestamp is then not used as an RTT sample.
  bool rtt_sample = true;
};

struct AckDup {
  int count = 1;  // consecutive duplicates seen so far
};

struct LossTimeout {};

using CcaEvent = std::variant<AckNew, AckDup, LossTimeout>;

enum class LossSignal : std::uint8_t { TripleDupAck, Timeout };

inline constexpr int kDupAckThreshold = 3;
inline constexpr double kMinWindowAfterLoss = 2.0;

// Tunables consumed when building an initial state. Unset optionals take
// the algorithm's default.
struct CcaOptions {
  std::optional<double> beta;
  double initial_cwnd = 2.0;
  double initial_ssthresh = std::numeric_limits<double>::infinity();
  double reno_alpha = 1.0;
  double cubic_c = 0.4;
  double cubic_beta = 0.3;
  double ctcp_zeta = 0.1;
  double ctcp_alpha = 0.125;
  double ctcp_k = 0.75;
  double ctcp_gamma = 30.0;
  double agile_lambda_max = 3.0;
  double sqrt_tolerance = 1e-12;
};

double default_beta(Algorithm algorithm) noexcept;

CcaState make_initial_state(Algorithm algorithm, const CcaOptions& options = {});

// Routes one event to the slow-start step, the algorithm's
// congestion-avoidance increase, or the loss reaction. Pure: identical
// inputs give identical outputs. Throws MalformedEvent for an AckNew whose
// `now` precedes its `send_time`.
CcaState dispatch(CcaState state, const CcaEvent& event);

// cwnd += 1; leaves slow start once cwnd reaches ssthresh.
CcaState slow_start_step(CcaState state);

// cwnd' = max(2, beta * cwnd), ssthresh' = cwnd' on a triple duplicate
// (phase -> FastRecovery). On a timeout ssthresh' = beta * cwnd, cwnd' = 2,
// phase -> SlowStart. Algorithm hooks (Cubic w_max, C-TCP split, Agile
// reference windows) run here as well.
CcaState multiplicative_decrease(CcaState state, LossSignal signal);

std::int64_t allowed_in_flight(const CcaState& state) noexcept;

// Throws DomainError when the state violates the documented invariants.
void validate(const CcaState& state);

}  // namespace elastic::cca

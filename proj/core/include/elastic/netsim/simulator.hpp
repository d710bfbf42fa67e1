#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elastic/cca/core.hpp"
#include "elastic/cca/registry.hpp"
#include "elastic/netsim/scenario.hpp"

namespace elastic::netsim {

struct FlowCounters {
  std::uint64_t sent_pkts = 0;       // every data transmission, retransmissions included
  std::uint64_t recv_pkts = 0;       // every data arrival at the receiver
  std::uint64_t qdrop_pkts = 0;      // droptail drops, any queue on the path
  std::uint64_t edrop_pkts = 0;      // packet-error drops on the bottleneck
  std::uint64_t in_flight_pkts = 0;  // still in queues or on wires at the end
  std::uint64_t goodput_pkts = 0;    // distinct sequence numbers delivered
  std::uint64_t retransmissions = 0;
  std::uint64_t fast_retransmits = 0;
  std::uint64_t timeouts = 0;
  double rtt_sum_s = 0.0;
  std::uint64_t rtt_samples = 0;

  double mean_rtt_s() const noexcept {
    return rtt_samples ? rtt_sum_s / static_cast<double>(rtt_samples) : 0.0;
  }
  friend bool operator==(const FlowCounters&, const FlowCounters&) = default;
};

struct FlowTrace {
  FlowSchedule schedule;
  FlowCounters counters;
  std::int64_t rounds = 0;  // completed round trips (window-of-data rounds)
  double first_send_s = -1.0;  // time of the first data transmission, -1 if none
  friend bool operator==(const FlowTrace&, const FlowTrace&) = default;
};

struct CwndSample {
  double time_s = 0.0;
  FlowId flow = 0;
  double cwnd = 0.0;
  cca::Phase phase = cca::Phase::SlowStart;
  friend bool operator==(const CwndSample&, const CwndSample&) = default;
};

struct LossRecord {
  double time_s = 0.0;
  FlowId flow = 0;
  cca::LossSignal signal = cca::LossSignal::TripleDupAck;
  double cwnd_before = 0.0;
  double cwnd_after = 0.0;
  std::int64_t round = 0;  // sender round counter when the loss was detected
  friend bool operator==(const LossRecord&, const LossRecord&) = default;
};

struct RunTrace {
  std::vector<FlowTrace> flows;
  std::vector<CwndSample> cwnd;
  std::vector<LossRecord> losses;
  double duration_s = 0.0;
  std::uint32_t packet_size_bytes = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t bottleneck_bits_sent = 0;
  std::size_t bottleneck_max_occupancy = 0;
  // Smallest (arrival - sent_at - path propagation) over all deliveries.
  std::int64_t min_delivery_slack_ns = 0;

  const FlowTrace& flow(FlowId id) const;
  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

// Runs the scenario to completion. Deterministic: the same config (seed
// included) always yields an identical trace. Throws ConfigError before
// simulating when the config is invalid, and AccountingError if the packet
// conservation identity fails at the end.
RunTrace run_scenario(const ScenarioConfig& config,
                      const cca::CcaRegistry& registry = cca::CcaRegistry::builtin());

}  // namespace elastic::netsim

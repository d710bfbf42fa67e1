#pragma once

#include <span>
#include <vector>

#include "elastic/netsim/simulator.hpp"

namespace elastic::metrics {

// Bandwidth-delay product in packets: bandwidth * rtt / packet_size_bits.
double bdp_packets(double bandwidth_bps, double rtt_s, double packet_size_bits);

double flow_throughput(double data_bits, double time_s);
double system_throughput(std::span<const double> per_flow_data_bits, double time_s);

// (sum sent - sum received) / sum sent. Throws AccountingError when a flow
// received more than it sent.
double loss_ratio(std::span<const double> sent, std::span<const double> received);

// Jain's index (sum x)^2 / (n * sum x^2), in [1/n, 1].
double jain_index(std::span<const double> x);

struct MetricsReport {
  std::vector<double> per_flow_throughput_bps;  // goodput over each flow's active time
  double system_throughput_bps = 0.0;           // all goodput over the run duration
  double utilization = 0.0;                     // system throughput / bottleneck rate
  double loss_ratio = 0.0;
  double jfi = 1.0;      // over per-flow throughputs
  double jfi_rtt = 1.0;  // over per-flow mean RTT samples
};

// Loss ratio uses packets whose fate is known: packets still in flight
// when the run ends are excluded from the sent side.
MetricsReport compute_report(const netsim::RunTrace& trace, double bottleneck_rate_bps);

}  // namespace elastic::metrics

#include "elastic/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "elastic/errors.hpp"

namespace elastic::metrics {

double bdp_packets(double bandwidth_bps, double rtt_s, double packet_size_bits) {
  if (!(bandwidth_bps > 0.0) || !(rtt_s > 0.0) || !(packet_size_bits > 0.0)) {
    throw DomainError("BDP needs positive bandwidth, RTT and packet size");
  }
  return bandwidth_bps * rtt_s / packet_size_bits;
}

double flow_throughput(double data_bits, double time_s) {
  if (!(time_s > 0.0)) throw DomainError("throughput needs a positive observation time");
  if (data_bits < 0.0) throw DomainError("delivered data cannot be negative");
  return data_bits / time_s;
}

double system_throughput(std::span<const double> per_flow_data_bits, double time_s) {
  if (!(time_s > 0.0)) throw DomainError("throughput needs a positive observation time");
  return std::accumulate(per_flow_data_bits.begin(), per_flow_data_bits.end(), 0.0) / time_s;
}

double loss_ratio(std::span<const double> sent, std::span<const double> received) {
  if (sent.size() != received.size()) {
    throw DomainError("loss ratio needs one received count per sent count");
  }
  double total_sent = 0.0;
  double total_recv = 0.0;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    if (received[i] > sent[i]) {
      throw AccountingError("flow " + std::to_string(i) + " received more than it sent");
    }
    total_sent += sent[i];
    total_recv += received[i];
  }
  if (!(total_sent > 0.0)) throw DomainError("loss ratio needs at least one sent packet");
  return (total_sent - total_recv) / total_sent;
}

double jain_index(std::span<const double> x) {
  if (x.empty()) throw DomainError("fairness index of an empty vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : x) {
    if (v < 0.0) throw DomainError("fairness index needs non-negative shares");
    sum += v;
    sum_sq += v * v;
  }
  if (!(sum > 0.0)) throw DomainError("fairness index of an all-zero vector");
  return (sum * sum) / (static_cast<double>(x.size()) * sum_sq);
}

MetricsReport compute_report(const netsim::RunTrace& trace, double bottleneck_rate_bps) {
  MetricsReport report;
  const double payload_bits = static_cast<double>(trace.packet_size_bytes) * 8.0;

  std::vector<double> delivered_bits;
  std::vector<double> sent;
  std::vector<double> received;
  std::vector<double> mean_rtts;
  for (const auto& f : trace.flows) {
    const auto& c = f.counters;
    const double bits = static_cast<double>(c.goodput_pkts) * payload_bits;
    const double active =
        std::min(f.schedule.stop_s, trace.duration_s) - std::min(f.schedule.start_s, trace.duration_s);
    report.per_flow_throughput_bps.push_back(active > 0.0 ? flow_throughput(bits, active) : 0.0);
    delivered_bits.push_back(bits);
    sent.push_back(static_cast<double>(c.sent_pkts - c.in_flight_pkts));
    received.push_back(static_cast<double>(c.recv_pkts));
    if (c.rtt_samples > 0) mean_rtts.push_back(c.mean_rtt_s());
  }

  report.system_throughput_bps = system_throughput(delivered_bits, trace.duration_s);
  report.utilization = report.system_throughput_bps / bottleneck_rate_bps;

  const double total_sent = std::accumulate(sent.begin(), sent.end(), 0.0);
  report.loss_ratio = total_sent > 0.0 ? loss_ratio(sent, received) : 0.0;

  const bool any_throughput = std::any_of(report.per_flow_throughput_bps.begin(),
                                          report.per_flow_throughput_bps.end(),
                                          [](double v) { return v > 0.0; });
  report.jfi = any_throughput ? jain_index(report.per_flow_throughput_bps) : 1.0;
  report.jfi_rtt = mean_rtts.empty() ? 1.0 : jain_index(mean_rtts);
  return report;
}

}  // namespace elastic::metrics

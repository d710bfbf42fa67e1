#include "elastic/netsim/trace_csv.hpp"

#include <ostream>
#include <string>
#include <unordered_map>

#include "elastic/csv.hpp"

namespace elastic::netsim {

void write_cwnd_csv(std::ostream& out, const RunTrace& trace) {
  std::unordered_map<FlowId, std::string> cca_of;
  for (const auto& f : trace.flows) cca_of.emplace(f.schedule.id, csv_field(f.schedule.cca));

  out << "time_s,flow_id,cca,cwnd_pkts,phase\n";
  for (const auto& s : trace.cwnd) {
    out << format_number(s.time_s) << ',' << s.flow << ',' << cca_of[s.flow] << ','
        << format_number(s.cwnd) << ',' << cca::to_string(s.phase) << '\n';
  }
}

void write_counters_csv(std::ostream& out, const RunTrace& trace) {
  out << "flow_id,sent_pkts,recv_pkts,qdrop_pkts,edrop_pkts\n";
  for (const auto& f : trace.flows) {
    const auto& c = f.counters;
    out << f.schedule.id << ',' << c.sent_pkts << ',' << c.recv_pkts << ',' << c.qdrop_pkts
        << ',' << c.edrop_pkts << '\n';
  }
}

}  // namespace elastic::netsim

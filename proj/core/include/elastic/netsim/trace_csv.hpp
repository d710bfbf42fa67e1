#pragma once

#include <iosfwd>

#include "elastic/netsim/simulator.hpp"

namespace elastic::netsim {

// time_s,flow_id,cca,cwnd_pkts,phase
void write_cwnd_csv(std::ostream& out, const RunTrace& trace);

// flow_id,sent_pkts,recv_pkts,qdrop_pkts,edrop_pkts
void write_counters_csv(std::ostream& out, const RunTrace& trace);

}  // namespace elastic::netsim

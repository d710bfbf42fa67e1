#pragma once

#include <cstdint>

#include "elastic/netsim/time.hpp"

namespace elastic::netsim {

using FlowId = std::uint32_t;

enum class PacketKind : std::uint8_t { Data, Ack };

// Data packets carry one segment; `seq` counts segments, not bytes. ACKs
// carry the cumulative next-expected segment in `seq` and echo the send
// time and retransmission flag of the data packet that triggered them.
struct Packet {
  std::uint64_t id = 0;
  FlowId flow = 0;
  PacketKind kind = PacketKind::Data;
  std::int64_t seq = 0;
  std::uint32_t size_bytes = 0;
  SimTime sent_at{};
  bool retransmission = false;

  friend bool operator==(const Packet&, const Packet&) = default;
};

}  // namespace elastic::netsim

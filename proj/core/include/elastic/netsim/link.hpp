#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "elastic/netsim/packet.hpp"
#include "elastic/netsim/time.hpp"

namespace elastic::netsim {

struct LinkConfig {
  double rate_bps = 1e9;
  double prop_delay_s = 0.0;  // one way
  std::size_t queue_capacity = 100;
  double per = 0.0;  // packet error rate, bottleneck only

  // Throws ConfigError prefixed with `name`.
  void validate(std::string_view name) const;
  friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

SimTime serialization_time(double rate_bps, std::uint32_t size_bytes);

// Output port serializer. Packets handed over back to back are serialized
// one after the other.
class Transmitter {
 public:
  struct Slot {
    SimTime start;
    SimTime finish;    // last bit on the wire
    SimTime delivery;  // last bit at the far end
  };

  Transmitter(double rate_bps, double prop_delay_s);

  Slot transmit(std::uint32_t size_bytes, SimTime now);

  SimTime busy_until() const noexcept { return busy_until_; }
  SimTime propagation() const noexcept { return prop_; }
  double rate_bps() const noexcept { return rate_bps_; }

 private:
  double rate_bps_;
  SimTime prop_;
  SimTime busy_until_{};
};

// delivery = max(now, busy_until) + size*8/rate + prop_delay
SimTime transmit(Transmitter& link, const Packet& packet, SimTime now);

}  // namespace elastic::netsim

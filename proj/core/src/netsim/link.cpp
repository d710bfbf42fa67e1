#include "elastic/netsim/link.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastic/errors.hpp"

namespace elastic::netsim {

void LinkConfig::validate(std::string_view name) const {
  const std::string prefix(name);
  if (!(rate_bps > 0.0) || !std::isfinite(rate_bps)) {
    throw ConfigError(prefix + ".rate_bps", "must be a positive finite rate");
  }
  if (!(prop_delay_s >= 0.0) || !std::isfinite(prop_delay_s)) {
    throw ConfigError(prefix + ".delay_s", "must be >= 0");
  }
  if (queue_capacity < 1) throw ConfigError(prefix + ".queue_pkts", "must be >= 1");
  if (!(per >= 0.0 && per <= 1.0)) throw ConfigError(prefix + ".per", "must lie in [0, 1]");
}

SimTime serialization_time(double rate_bps, std::uint32_t size_bytes) {
  return SimTime(std::llround(static_cast<double>(size_bytes) * 8.0 * 1e9 / rate_bps));
}

Transmitter::Transmitter(double rate_bps, double prop_delay_s)
    : rate_bps_(rate_bps), prop_(SimTime::from_seconds(prop_delay_s)) {
  if (!(rate_bps > 0.0)) throw DomainError("link rate must be positive");
  if (!(prop_delay_s >= 0.0)) throw DomainError("propagation delay must be >= 0");
}

Transmitter::Slot Transmitter::transmit(std::uint32_t size_bytes, SimTime now) {
  Slot slot;
  slot.start = std::max(now, busy_until_);
  slot.finish = slot.start + serialization_time(rate_bps_, size_bytes);
  slot.delivery = slot.finish + prop_;
  busy_until_ = slot.finish;
  return slot;
}

SimTime transmit(Transmitter& link, const Packet& packet, SimTime now) {
  return link.transmit(packet.size_bytes, now).delivery;
}

}  // namespace elastic::netsim

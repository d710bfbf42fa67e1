#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elastic/cca/core.hpp"
#include "elastic/netsim/link.hpp"
#include "elastic/netsim/packet.hpp"

namespace elastic::cca {
class CcaRegistry;
}

namespace elastic::netsim {

enum class ScenarioKind : std::uint8_t { Single, Sequential, Synchronous, Custom };

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) noexcept;

struct FlowSchedule {
  FlowId id = 0;
  std::string cca;
  double start_s = 0.0;
  double stop_s = 0.0;
  friend bool operator==(const FlowSchedule&, const FlowSchedule&) = default;
};

// One dumbbell experiment. Every sender has its own access link into the
// left bottleneck router and every receiver its own access link out of the
// right one; queue size and packet errors apply to the bottleneck only.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Single;
  LinkConfig access_link{.rate_bps = 1e10, .prop_delay_s = 0.0005, .queue_capacity = 100000};
  LinkConfig bottleneck{.rate_bps = 1e9, .prop_delay_s = 0.05, .queue_capacity = 100};
  std::vector<FlowSchedule> flows;
  double duration_s = 100.0;
  std::uint64_t seed = 1;
  std::uint32_t packet_size_bytes = 1000;
  std::uint32_t ack_size_bytes = 40;
  double trace_interval_s = 0.05;
  // Sender-side window cap in packets; 0 means unlimited.
  std::int64_t max_window = 0;
  cca::CcaOptions cca_options{};

  // Throws ConfigError naming the offending field.
  void validate() const;
  void validate(const cca::CcaRegistry& registry) const;
};

// Flow lists for the built-in scenario kinds:
//   single      one flow over the whole run
//   synchronous `count` flows, all over the whole run
//   sequential  flow i runs [i*stagger, duration - (count-1-i)*stagger]
std::vector<FlowSchedule> make_flow_schedule(ScenarioKind kind, std::size_t count,
                                             const std::string& cca, double duration_s,
                                             double stagger_s = 5.0);

// Round-trip propagation of the dumbbell path (no queueing, no serialization).
double base_rtt_seconds(const ScenarioConfig& config) noexcept;

}  // namespace elastic::netsim

#include "elastic/netsim/scenario.hpp"

#include <cmath>
#include <set>
#include <string>

#include "elastic/cca/registry.hpp"
#include "elastic/errors.hpp"

namespace elastic::netsim {

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::Single: return "single";
    case ScenarioKind::Sequential: return "sequential";
    case ScenarioKind::Synchronous: return "synchronous";
    case ScenarioKind::Custom: return "custom";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) noexcept {
  for (auto k : {ScenarioKind::Single, ScenarioKind::Sequential, ScenarioKind::Synchronous,
                 ScenarioKind::Custom}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw ConfigError("duration_s", "must be positive");
  }
  access_link.validate("access");
  bottleneck.validate("bottleneck");
  if (access_link.per != 0.0) {
    throw ConfigError("access.per", "packet errors apply to the bottleneck only");
  }
  if (packet_size_bytes == 0) throw ConfigError("packet_size_bytes", "must be positive");
  if (ack_size_bytes == 0) throw ConfigError("ack_size_bytes", "must be positive");
  if (!(trace_interval_s > 0.0)) throw ConfigError("trace_interval_s", "must be positive");
  if (max_window < 0) throw ConfigError("max_window", "must be >= 0 (0 = unlimited)");
  if (flows.empty()) throw ConfigError("flows", "at least one flow is required");

  std::set<FlowId> ids;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const auto& f = flows[i];
    const std::string key = "flows[" + std::to_string(i) + "]";
    if (!ids.insert(f.id).second) throw ConfigError(key + ".id", "duplicate flow id");
    if (f.cca.empty()) throw ConfigError(key + ".cca", "missing algorithm name");
    if (!(f.start_s >= 0.0)) throw ConfigError(key + ".start_s", "must be >= 0");
    if (!(f.stop_s > f.start_s)) throw ConfigError(key + ".stop_s", "must exceed start_s");
  }
}

void ScenarioConfig::validate(const cca::CcaRegistry& registry) const {
  validate();
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (!registry.contains(flows[i].cca)) {
      throw ConfigError("flows[" + std::to_string(i) + "].cca",
                        "unknown congestion control algorithm '" + flows[i].cca + "'");
    }
  }
  // Surface bad tunables (e.g. beta outside (0,1)) before simulating.
  try {
    for (const auto& f : flows) (void)registry.create(f.cca, cca_options)->initial_state();
  } catch (const DomainError& e) {
    throw ConfigError("cca_params", e.what());
  }
}

std::vector<FlowSchedule> make_flow_schedule(ScenarioKind kind, std::size_t count,
                                             const std::string& cca, double duration_s,
                                             double stagger_s) {
  std::vector<FlowSchedule> flows;
  switch (kind) {
    case ScenarioKind::Single:
      flows.push_back({0, cca, 0.0, duration_s});
      break;
    case ScenarioKind::Synchronous:
      for (std::size_t i = 0; i < count; ++i) {
        flows.push_back({static_cast<FlowId>(i), cca, 0.0, duration_s});
      }
      break;
    case ScenarioKind::Sequential:
      for (std::size_t i = 0; i < count; ++i) {
        const double start = static_cast<double>(i) * stagger_s;
        const double stop = duration_s - static_cast<double>(count - 1 - i) * stagger_s;
        flows.push_back({static_cast<FlowId>(i), cca, start, stop});
      }
      break;
    case ScenarioKind::Custom:
      break;
  }
  return flows;
}

double base_rtt_seconds(const ScenarioConfig& config) noexcept {
  return 2.0 * (2.0 * config.access_link.prop_delay_s + config.bottleneck.prop_delay_s);
}

}  // namespace elastic::netsim

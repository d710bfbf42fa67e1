#include "elastic/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "elastic/errors.hpp"

namespace elastic::harness {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& prefix,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) {
      throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

template <class T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, std::string("wrong type: ") + e.what());
  }
}

double get_number(const json& obj, std::string_view key, const std::string& prefix, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ConfigError(join(prefix, key), "expected a number");
  return it->get<double>();
}

template <class Int>
Int get_count(const json& obj, std::string_view key, const std::string& prefix, Int fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
    throw ConfigError(join(prefix, key), "expected a non-negative integer");
  }
  return static_cast<Int>(it->get<std::uint64_t>());
}

void parse_link(const json& obj, const std::string& prefix, netsim::LinkConfig& link,
                bool allow_queue) {
  if (allow_queue) {
    reject_unknown(obj, prefix, {"rate_bps", "delay_s", "queue_pkts"});
    link.queue_capacity = get_count(obj, "queue_pkts", prefix, link.queue_capacity);
  } else {
    reject_unknown(obj, prefix, {"rate_bps", "delay_s"});
  }
  link.rate_bps = get_number(obj, "rate_bps", prefix, link.rate_bps);
  link.prop_delay_s = get_number(obj, "delay_s", prefix, link.prop_delay_s);
}

void parse_cca_params(const json& obj, cca::CcaOptions& o) {
  const std::string p = "cca_params";
  reject_unknown(obj, p,
                 {"beta", "initial_cwnd", "reno_alpha", "cubic_c", "cubic_beta", "ctcp_zeta",
                  "ctcp_alpha", "ctcp_k", "ctcp_gamma", "agile_lambda_max", "sqrt_tolerance"});
  if (obj.contains("beta")) o.beta = get_number(obj, "beta", p, 0.5);
  o.initial_cwnd = get_number(obj, "initial_cwnd", p, o.initial_cwnd);
  o.reno_alpha = get_number(obj, "reno_alpha", p, o.reno_alpha);
  o.cubic_c = get_number(obj, "cubic_c", p, o.cubic_c);
  o.cubic_beta = get_number(obj, "cubic_beta", p, o.cubic_beta);
  o.ctcp_zeta = get_number(obj, "ctcp_zeta", p, o.ctcp_zeta);
  o.ctcp_alpha = get_number(obj, "ctcp_alpha", p, o.ctcp_alpha);
  o.ctcp_k = get_number(obj, "ctcp_k", p, o.ctcp_k);
  o.ctcp_gamma = get_number(obj, "ctcp_gamma", p, o.ctcp_gamma);
  o.agile_lambda_max = get_number(obj, "agile_lambda_max", p, o.agile_lambda_max);
  o.sqrt_tolerance = get_number(obj, "sqrt_tolerance", p, o.sqrt_tolerance);
}

std::vector<netsim::FlowSchedule> parse_flows(const json& arr, double duration) {
  if (!arr.is_array()) throw ConfigError("flows", "expected an array");
  std::vector<netsim::FlowSchedule> flows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "flows[" + std::to_string(i) + "]";
    const json& f = arr[i];
    reject_unknown(f, p, {"id", "cca", "start_s", "stop_s"});
    netsim::FlowSchedule s;
    s.id = get_count<netsim::FlowId>(f, "id", p, static_cast<netsim::FlowId>(i));
    if (f.contains("cca")) s.cca = get_as<std::string>(f["cca"], join(p, "cca"));
    s.start_s = get_number(f, "start_s", p, 0.0);
    s.stop_s = get_number(f, "stop_s", p, duration);
    flows.push_back(std::move(s));
  }
  return flows;
}

}  // namespace

void regenerate_flows(ExperimentMatrix& m) {
  if (m.base.kind == netsim::ScenarioKind::Custom) return;
  const std::size_t count = m.base.kind == netsim::ScenarioKind::Single ? 1 : m.flow_count;
  m.base.flows = netsim::make_flow_schedule(m.base.kind, count, "", m.base.duration_s, m.stagger_s);
}

ExperimentMatrix profile_defaults(std::string_view profile) {
  ExperimentMatrix m;
  m.profile = std::string(profile);
  if (profile == "paper-sim") {
    m.cca_set = {"elastic", "cubic", "ctcp", "agile"};
    m.buffer_sizes = {50, 100, 200, 400, 800, 1600, 3200, 6400};
    m.pers = {0.0, 1e-5, 1e-4};
  } else if (profile == "testbed") {
    m.cca_set = {"elastic", "cubic", "ctcp"};
    m.buffer_sizes = {50, 100, 200, 400, 800, 1600, 3200, 6400, 12500};
    m.pers = {0.0};
    m.base.packet_size_bytes = 1500;
    m.base.access_link.prop_delay_s = 0.0;
  } else {
    throw ConfigError("profile", "unknown profile '" + std::string(profile) +
                                     "' (expected paper-sim or testbed)");
  }
  m.repetitions = 30;
  regenerate_flows(m);
  return m;
}

ExperimentMatrix parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("parse error: ") + e.what());
  }
  reject_unknown(root, "",
                 {"profile", "scenario", "flow_count", "stagger_s", "flows", "duration_s",
                  "packet_size_bytes", "ack_size_bytes", "trace_interval_s", "max_window",
                  "bottleneck", "access", "cca_set", "buffer_sizes", "pers", "repetitions",
                  "seed_base", "fixed_seed", "scale", "cca_params"});

  const std::string profile =
      root.contains("profile") ? get_as<std::string>(root["profile"], "profile") : "paper-sim";
  ExperimentMatrix m = profile_defaults(profile);
  auto& b = m.base;

  if (root.contains("scenario")) {
    const auto name = get_as<std::string>(root["scenario"], "scenario");
    const auto kind = netsim::parse_scenario_kind(name);
    if (!kind) throw ConfigError("scenario", "unknown scenario kind '" + name + "'");
    b.kind = *kind;
  }
  m.flow_count = get_count(root, "flow_count", "", m.flow_count);
  m.stagger_s = get_number(root, "stagger_s", "", m.stagger_s);
  b.duration_s = get_number(root, "duration_s", "", b.duration_s);
  b.packet_size_bytes = get_count(root, "packet_size_bytes", "", b.packet_size_bytes);
  b.ack_size_bytes = get_count(root, "ack_size_bytes", "", b.ack_size_bytes);
  b.trace_interval_s = get_number(root, "trace_interval_s", "", b.trace_interval_s);
  b.max_window = get_count(root, "max_window", "", b.max_window);
  if (root.contains("bottleneck")) parse_link(root["bottleneck"], "bottleneck", b.bottleneck, false);
  if (root.contains("access")) parse_link(root["access"], "access", b.access_link, true);
  if (root.contains("cca_params")) parse_cca_params(root["cca_params"], b.cca_options);

  if (root.contains("cca_set")) {
    m.cca_set = get_as<std::vector<std::string>>(root["cca_set"], "cca_set");
  }
  if (root.contains("buffer_sizes")) {
    const auto& arr = root["buffer_sizes"];
    if (!arr.is_array()) throw ConfigError("buffer_sizes", "expected an array");
    m.buffer_sizes.clear();
    for (const auto& v : arr) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw ConfigError("buffer_sizes", "entries must be positive integers");
      }
      m.buffer_sizes.push_back(v.get<std::size_t>());
    }
  }
  if (root.contains("pers")) m.pers = get_as<std::vector<double>>(root["pers"], "pers");
  m.repetitions = get_count(root, "repetitions", "", m.repetitions);
  m.seed_base = get_count(root, "seed_base", "", m.seed_base);
  if (root.contains("fixed_seed")) m.fixed_seed = get_as<bool>(root["fixed_seed"], "fixed_seed");
  m.scale = get_number(root, "scale", "", m.scale);

  if (root.contains("flows")) {
    if (root.contains("scenario") && b.kind != netsim::ScenarioKind::Custom) {
      throw ConfigError("flows", "explicit flows require scenario \"custom\" or no scenario key");
    }
    b.kind = netsim::ScenarioKind::Custom;
    b.flows = parse_flows(root["flows"], b.duration_s);
  } else if (b.kind == netsim::ScenarioKind::Custom) {
    throw ConfigError("flows", "scenario \"custom\" needs a flows list");
  } else {
    regenerate_flows(m);
  }

  m.validate();
  return m;
}

ExperimentMatrix load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void ExperimentMatrix::validate(const cca::CcaRegistry& registry) const {
  if (repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  if (cca_set.empty()) throw ConfigError("cca_set", "must name at least one algorithm");
  std::set<std::string> seen;
  for (const auto& name : cca_set) {
    if (!registry.contains(name)) throw ConfigError("cca_set", "unknown algorithm '" + name + "'");
    if (!seen.insert(name).second) throw ConfigError("cca_set", "duplicate algorithm '" + name + "'");
  }
  if (buffer_sizes.empty()) throw ConfigError("buffer_sizes", "must not be empty");
  for (auto size : buffer_sizes) {
    if (size < 1) throw ConfigError("buffer_sizes", "entries must be >= 1");
  }
  if (pers.empty()) throw ConfigError("pers", "must not be empty");
  for (double per : pers) {
    if (!(per >= 0.0 && per <= 1.0)) throw ConfigError("pers", "entries must lie in [0, 1]");
  }
  if (!(scale >= 1.0) || !std::isfinite(scale)) throw ConfigError("scale", "must be >= 1");
  if (!(stagger_s >= 0.0)) throw ConfigError("stagger_s", "must be >= 0");
  if (base.kind != netsim::ScenarioKind::Single && base.kind != netsim::ScenarioKind::Custom &&
      flow_count < 1) {
    throw ConfigError("flow_count", "must be >= 1");
  }
  if (base.flows.empty()) throw ConfigError("flows", "at least one flow is required");

  // Check a concrete instance: the first cell with every template flow
  // filled in.
  netsim::ScenarioConfig probe = base;
  probe.bottleneck.queue_capacity = buffer_sizes.front();
  probe.bottleneck.per = pers.front();
  for (auto& f : probe.flows) {
    if (f.cca.empty()) f.cca = cca_set.front();
  }
  probe.validate(registry);
}

}  // namespace elastic::harness

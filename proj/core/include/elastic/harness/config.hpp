#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "elastic/cca/registry.hpp"
#include "elastic/netsim/scenario.hpp"

namespace elastic::harness {

// CCA x buffer x PER x repetition grid over one base scenario.
//
// Rates and buffer sizes are stored at their configured full-scale magnitude;
// `scale` divides link rates and buffer sizes together when a cell is
// instantiated, which keeps the buffer-to-BDP ratio of every cell intact.
struct ExperimentMatrix {
  std::string profile = "paper-sim";
  // Flow list template: a flow whose `cca` is empty runs the cell's algorithm.
  netsim::ScenarioConfig base{};
  std::size_t flow_count = 4;
  double stagger_s = 5.0;
  std::vector<std::string> cca_set;
  std::vector<std::size_t> buffer_sizes;
  std::vector<double> pers;
  std::size_t repetitions = 30;
  std::uint64_t seed_base = 1;
  // Every repetition reuses seed_base verbatim instead of a derived seed.
  bool fixed_seed = false;
  double scale = 1.0;

  void validate(const cca::CcaRegistry& registry = cca::CcaRegistry::builtin()) const;
};

// Built-in parameter sets: "paper-sim" (simulation grid) and "testbed"
// (emulated testbed grid). Throws ConfigError for any other name.
ExperimentMatrix profile_defaults(std::string_view profile);

// JSON config. Keys not listed in README are rejected with a diagnostic
// naming the key.
ExperimentMatrix parse_config(std::string_view text);
ExperimentMatrix load_config(const std::filesystem::path& path);

// Regenerates the flow template after flow_count / scenario changes.
void regenerate_flows(ExperimentMatrix& matrix);

}  // namespace elastic::harness

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "elastic/harness/config.hpp"
#include "elastic/metrics/metrics.hpp"
#include "elastic/metrics/summary.hpp"
#include "elastic/netsim/simulator.hpp"

namespace elastic::harness {

struct CellKey {
  std::size_t cca_index = 0;
  std::string cca;
  std::size_t buffer = 0;      // configured size
  std::size_t buffer_sim = 0;  // size after scaling
  double per = 0.0;

  // Filename-safe identifier, e.g. "elastic_b50_p0.0001".
  std::string id() const;
};

struct RunRow {
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  metrics::MetricsReport report;
  std::uint64_t sent_pkts = 0;
  std::uint64_t recv_pkts = 0;
  std::uint64_t qdrop_pkts = 0;
  std::uint64_t edrop_pkts = 0;
};

struct MetricSummary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<metrics::SummaryStats> stats;  // present when n >= 2
};

struct CellResult {
  CellKey key;
  std::vector<RunRow> runs;
  std::size_t failures = 0;
  MetricSummary throughput;
  MetricSummary loss_ratio;
  MetricSummary jfi;
  MetricSummary jfi_rtt;
};

struct MatrixResult {
  std::string scenario;
  std::vector<CellResult> cells;  // canonical order: cca_set x buffers x pers
};

// seed_base XOR a hash of (cca, buffer, per, rep), or seed_base itself when
// fixed_seed is set.
std::uint64_t cell_seed(const ExperimentMatrix& matrix, const std::string& cca,
                        std::size_t buffer, double per, std::size_t rep);

std::vector<CellKey> enumerate_cells(const ExperimentMatrix& matrix);

netsim::ScenarioConfig make_cell_config(const ExperimentMatrix& matrix, const CellKey& key,
                                        std::size_t rep);

// Called once per finished run, from worker threads.
using TraceSink =
    std::function<void(const CellKey& key, std::size_t rep, const netsim::RunTrace& trace)>;

struct RunOptions {
  std::size_t threads = 0;  // 0 = hardware concurrency
  TraceSink sink;
};

// Executes every (cell, rep). A failing run is recorded on its row and the
// remaining runs still execute.
MatrixResult run_matrix(const ExperimentMatrix& matrix, const RunOptions& options = {},
                        const cca::CcaRegistry& registry = cca::CcaRegistry::builtin());

}  // namespace elastic::harness

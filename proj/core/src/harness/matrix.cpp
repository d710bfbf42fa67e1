#include "elastic/harness/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "elastic/csv.hpp"
#include "elastic/netsim/random.hpp"

namespace elastic::harness {
namespace {

std::size_t scaled_buffer(std::size_t buffer, double scale) {
  const auto scaled = std::llround(static_cast<double>(buffer) / scale);
  return static_cast<std::size_t>(std::max<long long>(1, scaled));
}

MetricSummary summarize_metric(const std::vector<double>& values) {
  MetricSummary out;
  out.n = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    out.stats = metrics::summarize(values);
    out.mean = out.stats->mean;
  }
  return out;
}

void aggregate(CellResult& cell) {
  std::vector<double> thr, lr, jfi, jfi_rtt;
  for (const auto& run : cell.runs) {
    if (!run.ok) {
      ++cell.failures;
      continue;
    }
    thr.push_back(run.report.system_throughput_bps);
    lr.push_back(run.report.loss_ratio);
    jfi.push_back(run.report.jfi);
    jfi_rtt.push_back(run.report.jfi_rtt);
  }
  cell.throughput = summarize_metric(thr);
  cell.loss_ratio = summarize_metric(lr);
  cell.jfi = summarize_metric(jfi);
  cell.jfi_rtt = summarize_metric(jfi_rtt);
}

}  // namespace

std::string CellKey::id() const {
  return cca + "_b" + std::to_string(buffer) + "_p" + format_number(per);
}

std::uint64_t cell_seed(const ExperimentMatrix& matrix, const std::string& cca,
                        std::size_t buffer, double per, std::size_t rep) {
  if (matrix.fixed_seed) return matrix.seed_base;
  const std::string label =
      cca + "|" + std::to_string(buffer) + "|" + format_number(per) + "|" + std::to_string(rep);
  return matrix.seed_base ^ netsim::splitmix64(netsim::fnv1a64(label));
}

std::vector<CellKey> enumerate_cells(const ExperimentMatrix& matrix) {
  std::vector<CellKey> cells;
  cells.reserve(matrix.cca_set.size() * matrix.buffer_sizes.size() * matrix.pers.size());
  for (std::size_t c = 0; c < matrix.cca_set.size(); ++c) {
    for (auto buffer : matrix.buffer_sizes) {
      for (double per : matrix.pers) {
        cells.push_back(CellKey{.cca_index = c,
                                .cca = matrix.cca_set[c],
                                .buffer = buffer,
                                .buffer_sim = scaled_buffer(buffer, matrix.scale),
                                .per = per});
      }
    }
  }
  return cells;
}

netsim::ScenarioConfig make_cell_config(const ExperimentMatrix& matrix, const CellKey& key,
                                        std::size_t rep) {
  netsim::ScenarioConfig config = matrix.base;
  config.bottleneck.rate_bps /= matrix.scale;
  config.access_link.rate_bps /= matrix.scale;
  config.bottleneck.queue_capacity = key.buffer_sim;
  config.bottleneck.per = key.per;
  for (auto& flow : config.flows) {
    if (flow.cca.empty()) flow.cca = key.cca;
  }
  config.seed = cell_seed(matrix, key.cca, key.buffer, key.per, rep);
  return config;
}

MatrixResult run_matrix(const ExperimentMatrix& matrix, const RunOptions& options,
                        const cca::CcaRegistry& registry) {
  matrix.validate(registry);

  MatrixResult result;
  result.scenario = std::string(netsim::to_string(matrix.base.kind));
  for (auto& key : enumerate_cells(matrix)) {
    CellResult cell;
    cell.key = std::move(key);
    cell.runs.resize(matrix.repetitions);
    result.cells.push_back(std::move(cell));
  }

  const std::size_t jobs = result.cells.size() * matrix.repetitions;
  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs, 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      auto& cell = result.cells[job / matrix.repetitions];
      const std::size_t rep = job % matrix.repetitions;
      RunRow& row = cell.runs[rep];
      row.rep = rep;
      try {
        const auto config = make_cell_config(matrix, cell.key, rep);
        row.seed = config.seed;
        const auto trace = netsim::run_scenario(config, registry);
        row.report = metrics::compute_report(trace, config.bottleneck.rate_bps);
        for (const auto& flow : trace.flows) {
          row.sent_pkts += flow.counters.sent_pkts;
          row.recv_pkts += flow.counters.recv_pkts;
          row.qdrop_pkts += flow.counters.qdrop_pkts;
          row.edrop_pkts += flow.counters.edrop_pkts;
        }
        if (options.sink) options.sink(cell.key, rep, trace);
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (auto& cell : result.cells) aggregate(cell);
  return result;
}

}  // namespace elastic::harness

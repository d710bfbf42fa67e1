#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elastic/csv.hpp"
#include "elastic/errors.hpp"
#include "elastic/harness/config.hpp"
#include "elastic/harness/emit.hpp"
#include "elastic/harness/epoch_oracle.hpp"
#include "elastic/harness/matrix.hpp"

namespace {

using namespace elastic;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_matrix(const harness::ExperimentMatrix& m) {
  std::cout << "profile      " << m.profile << '\n'
            << "scenario     " << netsim::to_string(m.base.kind) << " (" << m.base.flows.size()
            << " flows)\n"
            << "cca_set      ";
  for (std::size_t i = 0; i < m.cca_set.size(); ++i) std::cout << (i ? "," : "") << m.cca_set[i];
  std::cout << "\nbuffers      ";
  for (std::size_t i = 0; i < m.buffer_sizes.size(); ++i) {
    std::cout << (i ? "," : "") << m.buffer_sizes[i];
  }
  std::cout << "\npers         ";
  for (std::size_t i = 0; i < m.pers.size(); ++i) {
    std::cout << (i ? "," : "") << format_number(m.pers[i]);
  }
  std::cout << "\nrepetitions  " << m.repetitions << "\nscale        " << format_number(m.scale)
            << "\nruns         "
            << m.cca_set.size() * m.buffer_sizes.size() * m.pers.size() * m.repetitions << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congestion-control simulator and experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  double scale = 0.0;
  std::string cca_list;
  std::size_t threads = 0;
  bool no_traces = false;

  auto* run = app.add_subcommand("run", "Execute an experiment matrix and write CSV results");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--seed", seed, "Override seed_base");
  run->add_option("--reps", reps, "Override repetitions")->check(CLI::PositiveNumber);
  run->add_option("--scale", scale, "Divide link rates and buffers by this factor")
      ->check(CLI::Range(1.0, 1e9));
  run->add_option("--cca", cca_list, "Comma-separated algorithm list");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_flag("--no-traces", no_traces, "Skip per-run trace and counter files");

  auto* validate = app.add_subcommand("validate", "Check a config file and print the matrix");
  validate->add_option("--config", config_path, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "Network-free reference iterations");
  oracle->require_subcommand(1);
  auto* epoch = oracle->add_subcommand("epoch", "Rounds to grow from beta*wmax back to wmax");
  std::string oracle_cca;
  double wmax = 0.0;
  double beta = 0.5;
  harness::EpochOracleOptions oracle_opts;
  bool verbose = false;
  epoch->add_option("--cca", oracle_cca, "Algorithm")->required();
  epoch->add_option("--wmax", wmax, "Window at the last loss (packets)")->required();
  epoch->add_option("--beta", beta, "Multiplicative decrease factor")->capture_default_str();
  epoch->add_option("--rtt", oracle_opts.rtt_s, "Round-trip time for cubic (s)")->capture_default_str();
  epoch->add_option("--delta", oracle_opts.delta, "Elastic weighting factor")->capture_default_str();
  epoch->add_flag("--verbose", verbose, "Print the window after every round");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*epoch) {
      const auto algorithm = cca::parse_algorithm(oracle_cca);
      if (!algorithm) throw ConfigError("cca", "unknown algorithm '" + oracle_cca + "'");
      oracle_opts.keep_windows = verbose;
      const auto result = harness::epoch_rounds(*algorithm, wmax, beta, oracle_opts);
      if (verbose) {
        std::cout << "round,cwnd_pkts\n0," << format_number(beta * wmax) << '\n';
        for (std::size_t i = 0; i < result.windows.size(); ++i) {
          std::cout << i + 1 << ',' << format_number(result.windows[i]) << '\n';
        }
      }
      std::cout << "cca=" << oracle_cca << " wmax=" << format_number(wmax)
                << " beta=" << format_number(beta) << " rounds=" << result.rounds << '\n';
      return 0;
    }

    auto matrix = harness::load_config(config_path);
    if (*validate) {
      print_matrix(matrix);
      std::cout << "ok\n";
      return 0;
    }

    if (run->count("--seed")) matrix.seed_base = seed;
    if (reps) matrix.repetitions = reps;
    if (run->count("--scale")) matrix.scale = scale;
    if (!cca_list.empty()) matrix.cca_set = split_list(cca_list);
    matrix.validate();

    harness::RunOptions options;
    options.threads = threads;
    if (!no_traces) options.sink = harness::make_trace_writer(out_dir);
    const auto result = harness::run_matrix(matrix, options);
    harness::emit(result, matrix, out_dir);

    std::size_t failed = 0;
    for (const auto& cell : result.cells) failed += cell.failures;
    std::cout << "cells=" << result.cells.size() << " runs="
              << result.cells.size() * matrix.repetitions << " failed=" << failed
              << " out=" << out_dir << '\n';
    return failed ? 2 : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

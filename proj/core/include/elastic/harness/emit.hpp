#pragma once

#include <filesystem>
#include <iosfwd>

#include "elastic/harness/matrix.hpp"

namespace elastic::harness {

void write_summary_csv(std::ostream& out, const MatrixResult& result);
void write_runs_csv(std::ostream& out, const MatrixResult& result);

// Writes summary.csv, runs.csv and manifest.json into `out_dir` (created if
// missing). Throws std::runtime_error naming the path on I/O failure.
void emit(const MatrixResult& result, const ExperimentMatrix& matrix,
          const std::filesystem::path& out_dir);

// Sink that writes trace_<cell>_<rep>.csv and counters_<cell>_<rep>.csv.
TraceSink make_trace_writer(const std::filesystem::path& out_dir);

}  // namespace elastic::harness

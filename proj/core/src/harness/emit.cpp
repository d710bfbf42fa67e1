#include "elastic/harness/emit.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "elastic/csv.hpp"
#include "elastic/netsim/trace_csv.hpp"
#include "json.hpp"

#ifndef ELASTIC_VERSION
#define ELASTIC_VERSION "unknown"
#endif

namespace elastic::harness {
namespace {

namespace fs = std::filesystem;

void put_summary(std::ostream& out, const MetricSummary& m) {
  if (m.n == 0) {
    out << ",,,,";
  } else if (!m.stats) {
    out << format_number(m.mean) << ",,,,";
  } else {
    const auto& s = *m.stats;
    out << format_number(s.mean) << ',' << format_number(s.sd) << ',' << format_number(s.se) << ','
        << format_number(s.ci_low) << ',' << format_number(s.ci_high);
  }
}

void put_key(std::ostream& out, const CellKey& key, const std::string& scenario) {
  out << csv_field(key.cca) << ',' << scenario << ',' << key.buffer << ',' << key.buffer_sim << ','
      << format_number(key.per);
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace

void write_summary_csv(std::ostream& out, const MatrixResult& result) {
  out << "cca,scenario,buffer_pkts,buffer_sim_pkts,per,n,failures";
  for (const char* m : {"throughput_bps", "loss_ratio", "jfi_intra", "jfi_rtt"}) {
    for (const char* s : {"mean", "sd", "se", "ci95_low", "ci95_high"}) out << ',' << m << '_' << s;
  }
  out << '\n';
  for (const auto& cell : result.cells) {
    put_key(out, cell.key, result.scenario);
    out << ',' << cell.throughput.n << ',' << cell.failures << ',';
    put_summary(out, cell.throughput);
    out << ',';
    put_summary(out, cell.loss_ratio);
    out << ',';
    put_summary(out, cell.jfi);
    out << ',';
    put_summary(out, cell.jfi_rtt);
    out << '\n';
  }
}

void write_runs_csv(std::ostream& out, const MatrixResult& result) {
  out << "cca,scenario,buffer_pkts,buffer_sim_pkts,per,rep,seed,status,throughput_bps,"
         "utilization,loss_ratio,jfi_intra,jfi_rtt,sent_pkts,recv_pkts,qdrop_pkts,edrop_pkts,"
         "error\n";
  for (const auto& cell : result.cells) {
    for (const auto& run : cell.runs) {
      put_key(out, cell.key, result.scenario);
      out << ',' << run.rep << ',' << run.seed << ',' << (run.ok ? "ok" : "error") << ',';
      if (run.ok) {
        const auto& r = run.report;
        out << format_number(r.system_throughput_bps) << ',' << format_number(r.utilization) << ','
            << format_number(r.loss_ratio) << ',' << format_number(r.jfi) << ','
            << format_number(r.jfi_rtt) << ',' << run.sent_pkts << ',' << run.recv_pkts << ','
            << run.qdrop_pkts << ',' << run.edrop_pkts << ',';
      } else {
        out << ",,,,,,,,,";
      }
      out << csv_field(run.error) << '\n';
    }
  }
}

void emit(const MatrixResult& result, const ExperimentMatrix& matrix, const fs::path& out_dir) {
  ensure_dir(out_dir);
  write_file(out_dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, result); });
  write_file(out_dir / "runs.csv", [&](std::ostream& o) { write_runs_csv(o, result); });

  nlohmann::ordered_json manifest;
  manifest["version"] = ELASTIC_VERSION;
  manifest["profile"] = matrix.profile;
  manifest["scenario"] = result.scenario;
  manifest["scale"] = matrix.scale;
  manifest["seed_base"] = matrix.seed_base;
  manifest["fixed_seed"] = matrix.fixed_seed;
  manifest["repetitions"] = matrix.repetitions;
  manifest["cca_set"] = matrix.cca_set;
  manifest["buffer_sizes"] = matrix.buffer_sizes;
  manifest["pers"] = matrix.pers;
  manifest["duration_s"] = matrix.base.duration_s;
  manifest["packet_size_bytes"] = matrix.base.packet_size_bytes;
  manifest["bottleneck_rate_bps"] = matrix.base.bottleneck.rate_bps / matrix.scale;
  manifest["bottleneck_delay_s"] = matrix.base.bottleneck.prop_delay_s;
  auto& runs = manifest["runs"] = nlohmann::ordered_json::array();
  for (const auto& cell : result.cells) {
    for (const auto& run : cell.runs) {
      runs.push_back({{"cell", cell.key.id()}, {"rep", run.rep}, {"seed", run.seed},
                      {"ok", run.ok}});
    }
  }
  write_file(out_dir / "manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
}

TraceSink make_trace_writer(const fs::path& out_dir) {
  ensure_dir(out_dir);
  return [out_dir](const CellKey& key, std::size_t rep, const netsim::RunTrace& trace) {
    const std::string stem = key.id() + "_" + std::to_string(rep) + ".csv";
    write_file(out_dir / ("trace_" + stem),
               [&](std::ostream& o) { netsim::write_cwnd_csv(o, trace); });
    write_file(out_dir / ("counters_" + stem),
               [&](std::ostream& o) { netsim::write_counters_csv(o, trace); });
  };
}

}  // namespace elastic::harness

// End-to-end checks, one output line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elastic/cca/elastic.hpp"
#include "elastic/harness/config.hpp"
#include "elastic/harness/emit.hpp"
#include "elastic/harness/epoch_oracle.hpp"
#include "elastic/harness/matrix.hpp"
#include "elastic/metrics/metrics.hpp"
#include "elastic/metrics/summary.hpp"
#include "elastic/netsim/simulator.hpp"
#include "oracles.hpp"

using namespace elastic;
namespace fs = std::filesystem;

namespace {

constexpr double kScale = 100.0;
constexpr std::size_t kBdp = 12500;  // 1 Gbps x 100 ms in 1000-byte packets

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool conserved(const netsim::RunTrace& t) {
  for (const auto& f : t.flows) {
    const auto& c = f.counters;
    if (c.sent_pkts != c.recv_pkts + c.qdrop_pkts + c.edrop_pkts + c.in_flight_pkts) return false;
  }
  return true;
}

// Every simulated trace passes through here so loss accounting can be
// checked over all of them.
std::size_t traces_checked = 0;
std::size_t traces_unbalanced = 0;

void account(const netsim::RunTrace& t) {
  ++traces_checked;
  if (!conserved(t)) ++traces_unbalanced;
}

// Full-scale matrix divided by kScale: 10 Mbps, 100 ms, 100 s.
harness::ExperimentMatrix scaled(netsim::ScenarioKind kind, std::size_t flows) {
  auto m = harness::profile_defaults("paper-sim");
  m.scale = kScale;
  m.base.kind = kind;
  m.flow_count = flows;
  m.base.duration_s = 100.0;
  harness::regenerate_flows(m);
  return m;
}

netsim::ScenarioConfig cell(const harness::ExperimentMatrix& m, const std::string& cca,
                            std::size_t buffer, double per, std::size_t rep) {
  harness::CellKey key;
  key.cca = cca;
  key.buffer = buffer;
  key.buffer_sim = std::max<std::size_t>(1, std::llround(buffer / m.scale));
  key.per = per;
  return harness::make_cell_config(m, key, rep);
}

// Mean result over `reps` seeds of one single-flow cell.
struct CellMean {
  double throughput_bps = 0.0;
  double utilization = 0.0;
  double loss_ratio = 0.0;
};

CellMean run_cell(const harness::ExperimentMatrix& m, const std::string& cca, std::size_t buffer,
                  double per, std::size_t reps) {
  CellMean out;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const auto c = cell(m, cca, buffer, per, rep);
    const auto t = netsim::run_scenario(c);
    account(t);
    const auto r = metrics::compute_report(t, c.bottleneck.rate_bps);
    out.throughput_bps += r.system_throughput_bps / reps;
    out.utilization += r.utilization / reps;
    out.loss_ratio += r.loss_ratio / reps;
  }
  return out;
}

void bdp_identities() {
  const double a = metrics::bdp_packets(1e9, 1e-3, 8000);
  const double b = metrics::bdp_packets(1e9, 0.1, 8000);
  report(1, "bdp-identities", a == 125.0 && b == 12500.0,
         "1 ms -> " + fmt("%.17g", a) + ", 100 ms -> " + fmt("%.17g", b));
}

// Epoch lengths measured as round-counter differences between consecutive
// fast-retransmit losses, each compared with the oracle for the window
// the epoch ended at.
struct EpochFit {
  double measured = 0.0;
  double predicted = 0.0;
  std::size_t epochs = 0;
};

EpochFit simulated_epochs(const std::string& name, cca::Algorithm algorithm) {
  const auto m = scaled(netsim::ScenarioKind::Single, 1);
  const auto c = cell(m, name, kBdp, 0.0, 0);
  const auto t = netsim::run_scenario(c);
  account(t);

  std::vector<netsim::LossRecord> losses;
  for (const auto& l : t.losses) {
    if (l.signal == cca::LossSignal::TripleDupAck) losses.push_back(l);
  }
  EpochFit fit;
  // The first loss ends slow start; its recovery is not an epoch.
  for (std::size_t i = 2; i < losses.size(); ++i) {
    const double beta = c.cca_options.beta.value_or(cca::default_beta(algorithm));
    fit.measured += static_cast<double>(losses[i].round - losses[i - 1].round);
    fit.predicted += static_cast<double>(
        harness::epoch_rounds(algorithm, losses[i].cwnd_before, beta).rounds);
    ++fit.epochs;
  }
  return fit;
}

void epoch_lengths() {
  const auto reno = harness::epoch_rounds(cca::Algorithm::NewReno, 12500, 0.5).rounds;
  const auto reno_oracle = oracle::newreno_epoch(12500, 0.5);
  const auto elastic = harness::epoch_rounds(cca::Algorithm::Elastic, 12500, 0.5).rounds;
  const auto elastic_oracle = oracle::elastic_epoch(12500, 0.5);
  bool ok = std::abs(reno - 6250) <= 1 && reno == reno_oracle && elastic == elastic_oracle &&
            elastic < 0.05 * 6250;
  std::string detail = "newreno " + std::to_string(reno) + " rounds, elastic " +
                       std::to_string(elastic) + " rounds";

  for (auto [name, algorithm] : {std::pair{"newreno", cca::Algorithm::NewReno},
                                 std::pair{"elastic", cca::Algorithm::Elastic}}) {
    const auto fit = simulated_epochs(name, algorithm);
    const double rel =
        fit.predicted > 0 ? std::abs(fit.measured - fit.predicted) / fit.predicted : INFINITY;
    ok = ok && fit.epochs >= 2 && rel <= 0.15;
    detail += std::string("; sim ") + name + " " + std::to_string(fit.epochs) + " epochs, mean " +
              fmt("%.1f", fit.measured / std::max<std::size_t>(fit.epochs, 1)) + " vs " +
              fmt("%.1f", fit.predicted / std::max<std::size_t>(fit.epochs, 1)) + " (" +
              fmt("%+.1f%%", 100 * (fit.measured - fit.predicted) / fit.predicted) + ")";
  }
  report(2, "epoch-lengths", ok, detail);
}

void throughput_ordering() {
  const auto m = scaled(netsim::ScenarioKind::Single, 1);
  constexpr std::size_t kReps = 5;
  const std::vector<std::string> baselines{"cubic", "ctcp", "agile"};

  const auto lossy_elastic = run_cell(m, "elastic", 50, 1e-4, kReps);
  bool lossy_ok = true;
  std::string detail = "per=1e-4 b=50: elastic " + fmt("%.3g", lossy_elastic.throughput_bps);
  for (const auto& b : baselines) {
    const auto r = run_cell(m, b, 50, 1e-4, kReps);
    lossy_ok = lossy_ok && lossy_elastic.throughput_bps >= r.throughput_bps;
    detail += " " + b + " " + fmt("%.3g", r.throughput_bps);
  }

  const auto clean_elastic = run_cell(m, "elastic", kBdp, 0.0, kReps);
  double best = 0.0;
  for (const auto& b : baselines) {
    best = std::max(best, run_cell(m, b, kBdp, 0.0, kReps).utilization);
  }
  const bool clean_ok = clean_elastic.utilization >= 0.90 && clean_elastic.utilization >= 0.95 * best;
  detail += "; per=0 b=BDP: elastic utilization " + fmt("%.3f", clean_elastic.utilization) +
            ", best baseline " + fmt("%.3f", best) + " -> " +
            (lossy_ok ? "ordering ok" : "ordering violated") + ", " +
            (clean_ok ? "utilization ok" : "utilization short");
  report(3, "throughput-ordering", lossy_ok && clean_ok, detail);
}

void fairness() {
  const std::vector<double> equal(7, 3.5);
  std::vector<double> one_hot(5, 0.0);
  one_hot[2] = 4.0;
  const bool exact = metrics::jain_index(equal) == 1.0 && metrics::jain_index(one_hot) == 0.2;

  const auto m = scaled(netsim::ScenarioKind::Synchronous, 4);
  const auto c = cell(m, "elastic", kBdp / 2, 0.0, 0);
  const auto t = netsim::run_scenario(c);
  account(t);
  const auto r = metrics::compute_report(t, c.bottleneck.rate_bps);
  report(4, "fairness", exact && r.jfi >= 0.9,
         std::string("exact identities ") + (exact ? "hold" : "broken") +
             ", four synchronous flows JFI " + fmt("%.4f", r.jfi));
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

void loss_accounting() {
  const auto single = scaled(netsim::ScenarioKind::Single, 1);
  double worst = 0.0;
  std::string worst_name;
  for (const char* name : {"newreno", "elastic", "cubic", "ctcp", "agile"}) {
    for (std::size_t buffer : {kBdp, 2 * kBdp}) {
      const double lr = run_cell(single, name, buffer, 0.0, 3).loss_ratio;
      if (lr >= worst) {
        worst = lr;
        worst_name = std::string(name) + " b=" + std::to_string(buffer);
      }
    }
  }
  const bool low_loss = worst < 0.01;

  const auto sync = scaled(netsim::ScenarioKind::Synchronous, 4);
  std::vector<double> buffers, ratios;
  std::string trend = "synchronous elastic loss ratio by buffer:";
  for (std::size_t buffer : sync.buffer_sizes) {
    const auto c = cell(sync, "elastic", buffer, 0.0, 0);
    const auto t = netsim::run_scenario(c);
    account(t);
    buffers.push_back(static_cast<double>(buffer));
    ratios.push_back(metrics::compute_report(t, c.bottleneck.rate_bps).loss_ratio);
    trend += " " + std::to_string(buffer) + ":" + fmt("%.4f", ratios.back());
  }
  const double rho = spearman(buffers, ratios);
  const bool grows = rho > 0.0 && ratios.back() > ratios.front();

  const bool balanced = traces_unbalanced == 0;
  report(5, "loss-accounting", balanced && low_loss && grows,
         std::to_string(traces_checked) + " traces, " + std::to_string(traces_unbalanced) +
             " unbalanced; worst buffer>=BDP loss ratio " + fmt("%.4f", worst) + " (" +
             worst_name + "); " + trend + " rank correlation " + fmt("%.2f", rho));
}

void elastic_math() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bad_bounds = 0, bad_product = 0, bad_dominance = 0, bad_sqrt = 0;
  constexpr int kSamples = 1'000'000;
  for (int i = 0; i < kSamples; ++i) {
    cca::RttState r;
    r.base = 1e-4 + 2.0 * u(rng);
    r.max = r.base * (1.0 + 20.0 * u(rng));
    r.current = r.base + (r.max - r.base) * u(rng);
    const double delta = cca::compute_delta(r);
    if (!(delta >= 1.0 && delta <= (r.max / r.base) * (1 + 1e-15))) ++bad_bounds;
    if (std::abs(cca::compute_ur(r.current, r.max) * delta - 1.0) > 1e-12) ++bad_product;

    const double cwnd = 1.0 + 1e5 * u(rng) * u(rng);
    const double inc = cca::compute_wwf(r, cwnd) / cwnd;
    if (inc < (1.0 / cwnd) * (1 - 1e-12)) ++bad_dominance;

    const double x = std::exp(std::log(1e-6) + (std::log(1e12) - std::log(1e-6)) * u(rng));
    const double root = cca::newton_sqrt(x, 1e-12);
    if (std::abs(root - std::sqrt(x)) > 1e-9 * std::sqrt(x)) ++bad_sqrt;
  }
  report(6, "elastic-math", bad_bounds + bad_product + bad_dominance + bad_sqrt == 0,
         std::to_string(kSamples) + " samples; violations: bounds " + std::to_string(bad_bounds) +
             ", reciprocity " + std::to_string(bad_product) + ", dominance " +
             std::to_string(bad_dominance) + ", sqrt " + std::to_string(bad_sqrt));
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[e.path().filename().string()] = s.str();
  }
  return files;
}

void determinism() {
  auto m = scaled(netsim::ScenarioKind::Sequential, 4);
  m.cca_set = {"elastic", "cubic"};
  m.buffer_sizes = {200};
  m.pers = {1e-4};
  m.repetitions = 2;
  const auto root = fs::temp_directory_path() / "elastic_acceptance_determinism";
  fs::remove_all(root);
  for (const char* run : {"a", "b"}) {
    const auto dir = root / run;
    const auto result = harness::run_matrix(m, {.threads = 2, .sink = harness::make_trace_writer(dir)});
    harness::emit(result, m, dir);
  }
  const auto a = read_dir(root / "a");
  const auto b = read_dir(root / "b");
  std::size_t differing = 0;
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != content) ++differing;
  }
  fs::remove_all(root);
  report(7, "determinism", a.size() == b.size() && a.size() > 3 && differing == 0,
         std::to_string(a.size()) + " files per run, " + std::to_string(differing) + " differ");
}

void statistics() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> lists;
  std::vector<double> ramp(30);
  for (int i = 0; i < 30; ++i) ramp[i] = i + 1;
  lists.push_back(ramp);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> v(30);
    const double loc = std::pow(10.0, k % 7 - 2);
    for (auto& x : v) x = loc * (1.0 + 0.1 * g(rng));
    lists.push_back(v);
  }
  double worst = 0.0;
  for (const auto& v : lists) {
    const auto s = metrics::summarize(v);
    const auto o = oracle::summarize(v);
    auto err = [](double got, double want) {
      return std::abs(got - want) / std::max(1.0, std::abs(want));
    };
    worst = std::max({worst, err(s.mean, o.mean), err(s.sd, o.sd), err(s.se, o.se),
                      err(s.ci_low, o.lo), err(s.ci_high, o.hi)});
  }
  report(8, "statistics", worst <= 1e-12,
         std::to_string(lists.size()) + " lists of 30, worst deviation " + fmt("%.2e", worst));
}

}  // namespace

int main() {
  bdp_identities();
  epoch_lengths();
  throughput_ordering();
  fairness();
  loss_accounting();
  elastic_math();
  determinism();
  statistics();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}

#include <benchmark/benchmark.h>

#include "elastic/cca/core.hpp"
#include "elastic/cca/elastic.hpp"
#include "elastic/netsim/simulator.hpp"

using namespace elastic;

static void BM_NewtonSqrt(benchmark::State& state) {
  double x = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cca::newton_sqrt(x, 1e-12));
    x = x * 1.0001 + 0.5;
    if (x > 1e9) x = 1.5;
  }
}
BENCHMARK(BM_NewtonSqrt);

static void BM_ElasticStep(benchmark::State& state) {
  auto s = cca::make_initial_state(cca::Algorithm::Elastic);
  s.cwnd = 6250;
  s.phase = cca::Phase::CongestionAvoidance;
  s.rtt.base = 0.1;
  s.rtt.current = 0.15;
  s.rtt.max = 0.2;
  for (auto _ : state) {
    auto next = cca::elastic_ca_step(s);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_ElasticStep);

static void BM_Dispatch(benchmark::State& state) {
  const auto algorithm = static_cast<cca::Algorithm>(state.range(0));
  auto s = cca::make_initial_state(algorithm);
  s.cwnd = 1000;
  s.ssthresh = 1000;
  s.phase = cca::Phase::CongestionAvoidance;
  double now = 1.0;
  for (auto _ : state) {
    now += 1e-4;
    s = cca::dispatch(s, cca::AckNew{.send_time = now - 0.1, .now = now});
    if (s.cwnd > 5000) s = cca::dispatch(s, cca::AckDup{3});
    benchmark::DoNotOptimize(s);
  }
  state.SetLabel(std::string(cca::to_string(algorithm)));
}
BENCHMARK(BM_Dispatch)->DenseRange(0, 4);

static void BM_RunScenario(benchmark::State& state) {
  netsim::ScenarioConfig c;
  c.bottleneck = {.rate_bps = 1e7, .prop_delay_s = 0.048, .queue_capacity = 125};
  c.access_link = {.rate_bps = 1e8, .prop_delay_s = 0.0005, .queue_capacity = 100000};
  c.duration_s = 10.0;
  c.flows = netsim::make_flow_schedule(netsim::ScenarioKind::Synchronous, 4, "elastic", 10.0);
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto t = netsim::run_scenario(c);
    events += t.events_processed;
    benchmark::DoNotOptimize(t.bottleneck_bits_sent);
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

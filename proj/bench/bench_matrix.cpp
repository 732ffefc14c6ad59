#include <benchmark/benchmark.h>

#include "arp/harness.hpp"

namespace {

arp::ExperimentConfig bench_config() {
  return arp::parse_experiment(R"({
    "seeds": {"problems": 5, "sigma0": 1},
    "methods": [
      {"name": "AR2", "p": 2, "strategy": "simple"},
      {"name": "AR3", "p": 3, "strategy": "simple+"}
    ],
    "problems": [
      {"name": "beale"}, {"name": "powell_singular"}, {"name": "rosenbrock", "d": 10},
      {"name": "nls", "d": 10}, {"name": "regcubic", "variant": 1, "d": 10},
      {"name": "regcubic", "variant": 3, "d": 10}
    ]
  })");
}

void run(benchmark::State& state, arp::Execution exec) {
  const auto cfg = bench_config();
  const auto problems = arp::build_problems(cfg);
  for (auto _ : state) {
    auto m = arp::run_matrix(cfg, problems, exec);
    benchmark::DoNotOptimize(m.summaries.data());
  }
}

void BM_MatrixSerial(benchmark::State& s) { run(s, arp::Execution::Serial); }
void BM_MatrixParallel(benchmark::State& s) { run(s, arp::Execution::Parallel); }

}  // namespace

BENCHMARK(BM_MatrixSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatrixParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

// Serial reference against the OpenMP point runner on the full suite.
#include "subcheck/suite/registry.hpp"
#include "subcheck/suite/runner.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace subcheck;
using namespace subcheck::suite;

namespace {

void run(benchmark::State& state, const char* example, ExecutionPolicy policy) {
  const Problem p = registry_entry(example);
  const auto selection = parse_selection(p, "all");
  Sampling s = p.sampling;
  s.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(p, selection, s, policy));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = policy == ExecutionPolicy::Parallel ? omp_get_max_threads() : 1;
}

void BM_serial_ex4(benchmark::State& s) { run(s, "ex4", ExecutionPolicy::Serial); }
void BM_parallel_ex4(benchmark::State& s) { run(s, "ex4", ExecutionPolicy::Parallel); }
void BM_serial_ex5(benchmark::State& s) { run(s, "ex5", ExecutionPolicy::Serial); }
void BM_parallel_ex5(benchmark::State& s) { run(s, "ex5", ExecutionPolicy::Parallel); }

}  // namespace

BENCHMARK(BM_serial_ex4)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_ex4)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_ex5)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_ex5)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

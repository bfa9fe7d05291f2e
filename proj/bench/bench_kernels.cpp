#include "scm/intervention.hpp"
#include "scm/kernels.hpp"
#include "scm/scenarios.hpp"
#include "scm/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

scm::Execution mode(const benchmark::State& state) {
  return state.range(0) ? scm::Execution::Parallel : scm::Execution::Serial;
}

void joint_noisy_grn(benchmark::State& state) {
  const scm::Scm m = scm::scenario_scm("grn_actual_noisy");
  for (auto _ : state)
    benchmark::DoNotOptimize(scm::kernels::joint_sweep(m, mode(state)));
}
BENCHMARK(joint_noisy_grn)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void joint_cyclic_pair(benchmark::State& state) {
  const scm::Scm m = scm::scenario_scm("symmetric_pair");
  for (auto _ : state)
    benchmark::DoNotOptimize(scm::kernels::joint_sweep(m, mode(state)));
}
BENCHMARK(joint_cyclic_pair)->Arg(0)->Arg(1);

void direct_cause_sweep(benchmark::State& state) {
  const scm::Scm m = scm::scenario_scm("grn_actual_noisy");
  scm::DetectionOptions opts;
  opts.exec = mode(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(scm::detect_direct_cause(m, m.id("G_1"), m.id("G_3"), opts));
}
BENCHMARK(direct_cause_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

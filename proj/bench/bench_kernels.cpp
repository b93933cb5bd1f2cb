// Serial reference path (jobs = 1) against the OpenMP path (jobs = 0) for the
// two parallel kernels.

#include <benchmark/benchmark.h>

#include "sphfam/enumerate.hpp"
#include "sphfam/subprop.hpp"

using namespace sphfam;

namespace {

void enumerate_kind(benchmark::State& state, GroupKind kind, EnumerationMode mode) {
  EnumerateOptions o;
  o.mode = mode;
  o.jobs = static_cast<int>(state.range(0));
  o.long_running = true;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_families(kind, o).families.size());
}

void subgroup_sweep(benchmark::State& state, GroupKind kind) {
  SubgroupSweepOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_subgr_equivalence(kind, o).counterexamples);
}

void prop5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prop5_report(static_cast<int>(state.range(0))).excluded.size());
}

}  // namespace

BENCHMARK_CAPTURE(enumerate_kind, E6_direct, GroupKind::E(6), EnumerationMode::Direct)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate_kind, H4_direct, GroupKind::H(4), EnumerationMode::Direct)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate_kind, E7_bfs, GroupKind::E(7), EnumerationMode::BFS)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate_kind, E8_bfs, GroupKind::E(8), EnumerationMode::BFS)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(subgroup_sweep, B5, GroupKind::B(5))->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(subgroup_sweep, D5, GroupKind::D(5))->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(prop5)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();

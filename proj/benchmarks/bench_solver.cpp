#include <benchmark/benchmark.h>

#include "ppot/capacity.hpp"
#include "ppot/generators.hpp"

using namespace ppot;

static void BM_Z2Capacity(benchmark::State& state) {
  auto box = lattice_box(2, state.range(0));
  auto sphere_set = box.boundary;
  SolverConfig cfg;
  cfg.p = static_cast<double>(state.range(1)) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(p_capacity(box.graph, {box.center}, sphere_set, cfg).value);
  state.counters["vertices"] = static_cast<double>(box.graph.vertex_count());
}
BENCHMARK(BM_Z2Capacity)->ArgsProduct({{16, 32, 64}, {3, 4, 6}})->Unit(benchmark::kMillisecond);

static void BM_CoordinateDescent(benchmark::State& state) {
  auto box = lattice_box(2, state.range(0));
  SolverConfig cfg;
  cfg.p = 3.0;
  cfg.method = SolverMethod::CoordinateDescent;
  cfg.tolerance = 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(p_capacity(box.graph, {box.center}, box.boundary, cfg).value);
}
BENCHMARK(BM_CoordinateDescent)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Z3Capacity(benchmark::State& state) {
  auto box = lattice_box(3, state.range(0));
  SolverConfig cfg;
  cfg.p = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(p_capacity(box.graph, {box.center}, box.boundary, cfg).value);
}
BENCHMARK(BM_Z3Capacity)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

#include <benchmark/benchmark.h>

#include "ppot/circlepack.hpp"
#include "ppot/cli/demo.hpp"

using namespace ppot;

static void BM_PackUniformDisk(benchmark::State& state) {
  auto t = triangulation_from_disk(triangulated_disk(static_cast<int>(state.range(0))));
  std::vector<double> radii(t.boundary.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pack_disk(t, radii).angle_residual);
  state.counters["vertices"] = static_cast<double>(t.graph.vertex_count());
}
BENCHMARK(BM_PackUniformDisk)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_VerifyPacking(benchmark::State& state) {
  auto t = triangulation_from_disk(triangulated_disk(static_cast<int>(state.range(0))));
  auto cp = pack_disk(t, std::vector<double>(t.boundary.size(), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_packing(cp.packing, 1e-6).valid());
}
BENCHMARK(BM_VerifyPacking)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_ObstructionDemo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_obstruction_demo({}).divergence.annuli);
}
BENCHMARK(BM_ObstructionDemo)->Unit(benchmark::kMillisecond);

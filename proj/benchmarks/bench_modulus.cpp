#include <benchmark/benchmark.h>

#include "ppot/cli/random.hpp"
#include "ppot/modulus.hpp"

using namespace ppot;

static void BM_ConnectorModulus(benchmark::State& state) {
  cli::Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = cli::random_connected_graph(rng, n, 0.7);
  auto fam = PathFamily::connector({0}, {n - 1, n - 2});
  ModulusConfig cfg;
  cfg.p = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(p_modulus(g, fam, cfg).value);
}
BENCHMARK(BM_ConnectorModulus)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_NullTrendTree(benchmark::State& state) {
  ModulusConfig cfg;
  cfg.p = 2.0;
  auto fam = FamilySpec::parse("tree:b=2");
  for (auto _ : state) benchmark::DoNotOptimize(null_family_trend(fam, {4, 6, 8}, cfg).null_trend);
}
BENCHMARK(BM_NullTrendTree)->Unit(benchmark::kMillisecond);

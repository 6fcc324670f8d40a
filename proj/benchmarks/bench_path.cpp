#include <benchmark/benchmark.h>

#include "qmsel/experiment.hpp"
#include "qmsel/path.hpp"
#include "qmsel/scenario.hpp"
#include "qmsel/screen.hpp"

using namespace qmsel;

namespace {

void BM_SicaPath(benchmark::State& state) {
  auto cfg = default_config(Scenario::multiple_index, static_cast<int>(state.range(0)));
  cfg.test_size = 1;
  const auto d = generate(cfg, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sica_path(d.family, d.y, d.x, PathConfig{}).points.size());
}
BENCHMARK(BM_SicaPath)->Arg(200)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_PermutationScreen(benchmark::State& state) {
  auto cfg = default_config(Scenario::multiple_index, static_cast<int>(state.range(0)));
  cfg.test_size = 1;
  const auto d = generate(cfg, 0);
  const ScreenConfig sc = PermutationThreshold{50, 1.0, 5};
  for (auto _ : state) benchmark::DoNotOptimize(sis_screen(d.family, d.y, d.x, sc).kept.size());
}
BENCHMARK(BM_PermutationScreen)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Replication(benchmark::State& state) {
  auto cfg = default_config(Scenario::multiple_index, static_cast<int>(state.range(0)));
  cfg.test_size = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(run_replication(cfg, 0).n_candidates);
}
BENCHMARK(BM_Replication)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

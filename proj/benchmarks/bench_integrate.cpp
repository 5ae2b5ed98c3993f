#include "denseflock/integrate.hpp"
#include "denseflock/scenarios.hpp"

#include <benchmark/benchmark.h>

using namespace denseflock;

namespace {

void BM_Rk4Step(benchmark::State& state) {
  const ModelKind model = static_cast<ModelKind>(state.range(0));
  ScenarioSpec spec = box_spec(model, 1);
  const EnsembleState s = make_initial_state(spec);
  const NeighborTable table = neighbor_sets(spec.params, s.positions, spec.domain);
  for (auto _ : state) benchmark::DoNotOptimize(rk4_step(s, spec.dt, spec.params, table, spec.domain));
  state.SetLabel(std::string(to_string(model)));
}

void BM_BoxRun(benchmark::State& state) {
  ScenarioSpec spec = box_spec(ModelKind::DI, 1);
  spec.t_end = 10.0;
  spec.record_clusters = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(spec));
}

}  // namespace

BENCHMARK(BM_Rk4Step)->DenseRange(0, 3);
BENCHMARK(BM_BoxRun)->Unit(benchmark::kMillisecond);

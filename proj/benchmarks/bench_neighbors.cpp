#include "denseflock/neighbors.hpp"
#include "denseflock/scenarios.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace denseflock;

namespace {

// constant density of 64 particles per 625 area, as in the standard box
void run_search(benchmark::State& state, NeighborSearch search) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double side = 25.0 * std::sqrt(static_cast<double>(n) / 64.0);
  const EnsembleState s = init_random_clusters(n, side, 1, 0.0);
  const Domain domain = Domain::periodic(side);
  for (auto _ : state) benchmark::DoNotOptimize(neighbor_sets_di(s.positions, 2.0, 3, domain, search));
  state.SetComplexityN(state.range(0));
}

void BM_Pairwise(benchmark::State& state) { run_search(state, NeighborSearch::Pairwise); }
void BM_CellGrid(benchmark::State& state) { run_search(state, NeighborSearch::CellGrid); }
void BM_Ghost(benchmark::State& state) { run_search(state, NeighborSearch::Ghost); }

}  // namespace

BENCHMARK(BM_Pairwise)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_CellGrid)->RangeMultiplier(4)->Range(64, 16384)->Complexity();
BENCHMARK(BM_Ghost)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

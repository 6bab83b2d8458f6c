// Serial reference vs OpenMP pipeline on the same trajectories.
#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "qfl/accounting.hpp"
#include "qfl/synthetic.hpp"

namespace {

const qfl::Trajectory& trajectory(std::size_t dim, std::size_t steps) {
  static std::map<std::pair<std::size_t, std::size_t>, qfl::Trajectory> cache;
  auto it = cache.find({dim, steps});
  if (it == cache.end()) it = cache.emplace(std::pair{dim, steps}, qfl::random_smooth_trajectory({dim, steps, 1.0, 1})).first;
  return it->second;
}

void BM_AnalyzeSerial(benchmark::State& state) {
  const auto& traj = trajectory(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qfl::analyze_serial(traj));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_AnalyzeParallel(benchmark::State& state) {
  const auto& traj = trajectory(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qfl::analyze(traj));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_HermitianEig(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<qfl::CMatrix> mats;
  for (int i = 0; i < 64; ++i) mats.push_back(qfl::random_hermitian(rng, state.range(0)));
  for (auto _ : state)
    for (const auto& m : mats) benchmark::DoNotOptimize(qfl::hermitian_eig(m));
  state.SetItemsProcessed(state.iterations() * 64);
}

}  // namespace

BENCHMARK(BM_AnalyzeSerial)->ArgsProduct({{2, 4, 8}, {2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->ArgsProduct({{2, 4, 8}, {2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermitianEig)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "maskperc/analytic.hpp"
#include "maskperc/graph.hpp"
#include "maskperc/simulate.hpp"

namespace {

using namespace maskperc;

const MaskModelParams kFig1 = MaskModelParams::explicit_matrix(0.45, 0.126, 0.18, 0.42, 0.6);

void BM_BuildNetwork(benchmark::State& state) {
  const auto dist = DegreeDistribution::poisson(5.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_network(dist, n, 0.45, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildNetwork)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_Outbreak(benchmark::State& state) {
  const auto net = build_network(DegreeDistribution::poisson(static_cast<double>(state.range(0))), 100'000, 0.45, 1);
  OutbreakSimulator sim(net);
  std::uint64_t seed = 0;
  std::size_t infected = 0;
  for (auto _ : state) {
    infected += sim.run(kFig1, PatientZeroPolicy::random, ++seed).total_infected;
  }
  state.counters["mean_infected"] = benchmark::Counter(static_cast<double>(infected) / state.iterations());
}
BENCHMARK(BM_Outbreak)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_EmergenceSolver(benchmark::State& state) {
  const auto dist = DegreeDistribution::poisson(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(emergence_probability(dist, kFig1));
}
BENCHMARK(BM_EmergenceSolver)->Arg(4)->Arg(10);

void BM_SizeSolver(benchmark::State& state) {
  const auto dist = DegreeDistribution::poisson(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(epidemic_size(dist, kFig1));
}
BENCHMARK(BM_SizeSolver)->Arg(4)->Arg(10);

void BM_PowerLawSizeSolver(benchmark::State& state) {
  const auto dist = DegreeDistribution::power_law(2.5, 1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(epidemic_size(dist, kFig1));
}
BENCHMARK(BM_PowerLawSizeSolver)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();

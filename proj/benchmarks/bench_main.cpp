#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "linematch/algorithms.hpp"
#include "linematch/generators.hpp"
#include "linematch/matching.hpp"
#include "linematch/run.hpp"
#include "linematch/trigger.hpp"

using namespace linematch;

static void BM_PartialDp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = generate_instance(GeneratorKind::Uniform, n, 1);
  const std::vector<double> prefix(inst.requests.begin(), inst.requests.begin() + static_cast<long>(n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_partial_cost(prefix, inst.servers));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_PartialDp)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

static void BM_OptProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = generate_instance(GeneratorKind::Uniform, n, 2);
  const std::vector<double> prefix(inst.requests.begin(), inst.requests.begin() + static_cast<long>(n / 2));
  for (auto _ : state) {
    OptProfile prof(prefix, inst.servers);
    benchmark::DoNotOptimize(prof.cost_with(inst.servers[n / 3] + 0.5));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_OptProfile)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

static void BM_MdhRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kind = static_cast<GeneratorKind>(state.range(1));
  Instance inst = generate_instance(kind, n, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(inst, AlgorithmKind::ModifiedDoubledHarmonic, seed++).online_cost);
}
BENCHMARK(BM_MdhRun)
    ->ArgsProduct({{16, 64, 256}, {static_cast<long>(GeneratorKind::Uniform), static_cast<long>(GeneratorKind::GeometricGaps),
                                   static_cast<long>(GeneratorKind::HarmonicAdversary)}})
    ->Unit(benchmark::kMillisecond);

static void BM_DhRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = generate_instance(GeneratorKind::GeometricGaps, n, 4);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(inst, AlgorithmKind::DoubledHarmonic, seed++).online_cost);
}
BENCHMARK(BM_DhRun)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_NextDistribution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = generate_instance(GeneratorKind::Uniform, n, 5);
  SeededChoices rng(5);
  ModifiedDoubledHarmonic mdh(inst.servers, rng);
  for (std::size_t t = 0; t < n / 2; ++t) mdh.serve(inst.requests[t]);
  const auto avail = mdh.state().available_indices();
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < avail.size(); ++i) xs.push_back(0.5 * (inst.servers[avail[i]] + inst.servers[avail[i + 1]]));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mdh.next_distribution(xs[k]).total());
    k = (k + 1) % xs.size();
  }
}
BENCHMARK(BM_NextDistribution)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK_MAIN();

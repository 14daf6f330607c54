#include <benchmark/benchmark.h>

#include "pgreedy/constants.hpp"
#include "pgreedy/greedy.hpp"
#include "pgreedy/renorm.hpp"
#include "pgreedy/spaces.hpp"

using namespace pgreedy;

namespace {

PSpace bench_space(int which, std::size_t n) {
  return make_builtin(all_builtin_spaces()[static_cast<std::size_t>(which)], n, 0.5);
}

}  // namespace

static void BM_Norm(benchmark::State& state) {
  const PSpace space = bench_space(static_cast<int>(state.range(0)), 8);
  const CoeffVector f(8, {1, -0.5, 0.25, 2, 0, 1, -1, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(space.norm(f));
  state.SetLabel(std::string(builtin_name(all_builtin_spaces()[static_cast<std::size_t>(state.range(0))])));
}
BENCHMARK(BM_Norm)->DenseRange(0, 3);

static void BM_GreedySets(benchmark::State& state) {
  const CoeffVector f(8, {1, -1, 0.5, 1, 0.5, -1, 0.25, 1});
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sets(f, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GreedySets)->DenseRange(1, 7, 2);

static void BM_Universe(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    GridUniverse u(GridSpec::standard(n));
    benchmark::DoNotOptimize(u.size());
  }
}
BENCHMARK(BM_Universe)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

// One estimator at dimension n with a given worker count.
static void BM_Estimate(benchmark::State& state) {
  const auto kind = all_constant_kinds()[static_cast<std::size_t>(state.range(0))];
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const std::size_t workers = static_cast<std::size_t>(state.range(2));
  const GridSearch search(bench_space(3, n), GridSpec::standard(n), {.workers = workers});
  std::uint64_t configs = 0;
  for (auto _ : state) {
    const ConstantEstimate e = search.estimate(kind);
    configs = e.configurations;
    benchmark::DoNotOptimize(e.value);
  }
  state.counters["configs"] = static_cast<double>(configs);
  state.SetLabel(std::string(symbol(kind)));
}
BENCHMARK(BM_Estimate)
    ->ArgsProduct({benchmark::CreateDenseRange(0, 9, 1), {4}, {1}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Estimate)->ArgsProduct({{2, 3}, {5}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_NormA(benchmark::State& state) {
  const PSpace space = make_builtin(BuiltinSpace::WeightedGeometric, 6, 1.0);
  RenormSearchSpec spec;
  spec.max_support = 6;
  const CoeffVector f(6, {1, 0, 0.5, 0, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(norm_a(space, f, spec));
}
BENCHMARK(BM_NormA);

static void BM_CpgRenormed(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PSpace space = make_builtin(BuiltinSpace::WeightedGeometric, n, 1.0);
  const GridUniverse universe(GridSpec::standard(n));
  RenormSearchSpec spec;
  spec.max_support = n;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_Cpg_renormed(space, universe, spec).value);
}
BENCHMARK(BM_CpgRenormed)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_Eta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eta_p(0.5, 1.7));
}
BENCHMARK(BM_Eta);
BENCHMARK_MAIN();

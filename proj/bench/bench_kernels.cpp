// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "rashomon/experiments.hpp"
#include "rashomon/noise.hpp"
#include "rashomon/reference.hpp"
#include "rashomon/rng.hpp"

using namespace rashomon;

namespace {

Dataset tree_data(std::size_t n, std::size_t m) {
  SyntheticSpec s;
  s.kind = "planted_tree";
  s.n = n;
  s.m = m;
  s.depth = 3;
  s.label_noise = 0.1;
  s.seed = 42;
  return make_synthetic(s);
}

Dataset linear_data(std::size_t n) {
  GaussianPairSpec s;
  s.dims = 2;
  s.mu_neg = {0.0, 0.0};
  s.mu_pos = {1.5, 1.5};
  s.n_per_class = n / 2;
  s.seed = 7;
  return flip_labels_uniform(gen_gaussian_pair(s), 0.1, 8);
}

void BM_TreesParallel(benchmark::State& state) {
  const Dataset d = tree_data(500, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rashomon_trees(d, 3, 0.05).rashomon_count);
}

void BM_TreesReference(benchmark::State& state) {
  const Dataset d = tree_data(500, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_rashomon_trees(d, 3, 0.05).rashomon_count);
}

void BM_BnbParallel(benchmark::State& state) {
  const Dataset d = linear_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(branch_and_bound_patterns(d, 0.05).patterns.size());
}

void BM_BnbReference(benchmark::State& state) {
  const Dataset d = linear_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::branch_and_bound_patterns(d, 0.05).patterns.size());
}

}  // namespace

BENCHMARK(BM_TreesParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreesReference)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BnbParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BnbReference)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

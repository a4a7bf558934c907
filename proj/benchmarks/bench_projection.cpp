#include <benchmark/benchmark.h>

#include <random>

#include "ordsparse/constraint.hpp"

namespace {

Eigen::VectorXd random_input(Eigen::Index n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> normal(0.0, 2.0);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = normal(rng);
  return y;
}

void BM_IsotoneProjection(benchmark::State& state) {
  const Eigen::VectorXd y = random_input(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordsparse::project_isotone_nonneg(y));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IsotoneProjection)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BlockIsotoneProjection(benchmark::State& state) {
  const Eigen::VectorXd y = random_input(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordsparse::project_block_isotone(y, 20));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BlockIsotoneProjection)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ordsparse/npg.hpp"

namespace {

std::vector<double> random_inputs(int count) {
  std::mt19937_64 rng(count);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  std::vector<double> ys(count);
  for (double& y : ys) y = unif(rng);
  return ys;
}

void BM_ProxL1(benchmark::State& state) {
  const auto ys = random_inputs(1024);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordsparse::prox_l1(ys[i++ & 1023], 0.05));
  }
}
BENCHMARK(BM_ProxL1);

void BM_ProxLpHalf(benchmark::State& state) {
  const auto ys = random_inputs(1024);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ordsparse::prox_lp(ys[i++ & 1023], 1.0, 0.05, 0.5));
  }
}
BENCHMARK(BM_ProxLpHalf);

void BM_ProxLog(benchmark::State& state) {
  const auto ys = random_inputs(1024);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ordsparse::prox_log(ys[i++ & 1023], 1.0, 0.08, 0.5));
  }
}
BENCHMARK(BM_ProxLog);

}  // namespace

BENCHMARK_MAIN();

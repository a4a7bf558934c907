#include <benchmark/benchmark.h>

#include "ordsparse/experiment.hpp"
#include "ordsparse/npg.hpp"
#include "ordsparse/solver.hpp"

namespace {

using namespace ordsparse;

// Throughput of full outer iterations at the desk-scale triple.
void BM_DmaIterations(benchmark::State& state) {
  const CsInstance inst = gen_cs_instance(256, 54, 18, 0.1, 1);
  Problem pb(LeastSquares(inst.A, inst.b), Regularizer::lp(0.5), 5e-2,
             ConstraintSet::isotone_nonneg(256));
  const Eigen::VectorXd x0 = ordered_gaussian(256, 2);

  SolverConfig config;
  config.tol_step = 0.0;
  config.max_iters = state.range(0);

  for (auto _ : state) {
    benchmark::DoNotOptimize(dma_solve(pb, config, x0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DmaIterations)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_NpgIterations(benchmark::State& state) {
  const CsInstance inst = gen_cs_instance(256, 54, 18, 0.1, 1);
  LeastSquares smooth(inst.A, inst.b);
  const Eigen::VectorXd x0 = ordered_gaussian(256, 2);

  SolverConfig config;
  config.tol_step = 0.0;
  config.max_iters = state.range(0);

  for (auto _ : state) {
    benchmark::DoNotOptimize(
        npg_solve(smooth, ProxSpec::lp_power(5e-2, 0.5), config, x0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NpgIterations)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

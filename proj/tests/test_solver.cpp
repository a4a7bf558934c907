#include "ordsparse/solver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ordsparse/experiment.hpp"
#include "support/oracles.hpp"

namespace ordsparse {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Problem ordered_lp_problem(const CsInstance& inst, double lambda, double p) {
  return Problem(LeastSquares(inst.A, inst.b), Regularizer::lp(p), lambda,
                 ConstraintSet::isotone_nonneg(inst.A.cols()));
}

TEST(GRightDeriv, KnownValues) {
  EXPECT_DOUBLE_EQ(g_right_deriv(1.0, 0.5, 1.0, Regularizer::linear()), 0.5);
  EXPECT_DOUBLE_EQ(g_right_deriv(1.0, 0.5, 1.0, Regularizer::lp(0.5)), 1.0);
  EXPECT_DOUBLE_EQ(g_right_deriv(0.0, 3.7, 2.0, Regularizer::lp(0.5)), 0.0);
  EXPECT_THROW(g_right_deriv(-1.0, 0.0, 1.0, Regularizer::linear()),
               std::invalid_argument);
  EXPECT_THROW(g_right_deriv(1.0, 0.0, 0.0, Regularizer::linear()),
               std::invalid_argument);
}

TEST(Step1b, KnownValues) {
  const ConstraintSet orthant = ConstraintSet::nonneg_orthant(2);
  EXPECT_EQ(step1b(vec({1, 1}), vec({2, 0.5}), 1.0, orthant), vec({0, 0.5}));
  EXPECT_EQ(step1b(vec({1, 1}), vec({0, 0}), 3.0, orthant), vec({1, 1}));

  const ConstraintSet iso = ConstraintSet::isotone_nonneg(3);
  EXPECT_EQ(step1b(vec({2, 1, 1}), vec({-1, 0, 1}), 1.0, iso), vec({3, 1, 0}));

  EXPECT_THROW(step1b(vec({1, 1}), vec({1}), 1.0, orthant),
               std::invalid_argument);
  EXPECT_THROW(step1b(vec({1, 1}), vec({1, 1}), 0.0, orthant),
               std::invalid_argument);
}

TEST(BbStepsize, KnownValues) {
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_DOUBLE_EQ(bb_stepsize(vec({1, 2, 3}), vec({0, 1, 2}), identity, 1.0),
                   1.0);
  EXPECT_DOUBLE_EQ(bb_stepsize(vec({1, 2, 3}), vec({1, 2, 3}), identity, 1.0),
                   1e8);
  EXPECT_DOUBLE_EQ(
      bb_stepsize(vec({1, 0, 0}), vec({0, 0, 0}), 2.0 * identity, 1.0), 0.25);
}

TEST(SolverConfig, Validation) {
  SolverConfig good;
  EXPECT_NO_THROW(good.validate());

  SolverConfig bad = good;
  bad.tau = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = good;
  bad.c1 = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = good;
  bad.gamma_min = 10.0;
  bad.gamma_max = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = good;
  bad.eta_init = 5.0;  // above eta_hi
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = good;
  bad.window = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = good;
  bad.tol_step = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(EtaSearch, LinearAcceptsFirstTrialWhenEtaDominates) {
  const CsInstance inst = gen_cs_instance(6, 4, 2, 0.05, 3);
  Problem pb(LeastSquares(inst.A, inst.b), Regularizer::linear(), 0.1,
             ConstraintSet::isotone_nonneg(6));
  const Eigen::VectorXd x = ordered_gaussian(6, 99);
  const Eigen::VectorXd v = pb.reg().psi(x.cwiseAbs());
  const Eigen::VectorXd grad = pb.grad_smooth(x);

  SolverConfig config;
  config.eta_hi = 4.0;
  config.eta_init = 2.0;  // gamma = 1 makes 1/gamma = 1 <= eta_init
  const EtaSearchResult res = eta_linesearch(pb, x, v, grad, 1.0, config);
  EXPECT_EQ(res.trials, 1);
  EXPECT_DOUBLE_EQ(res.eta, 2.0);
}

TEST(EtaSearch, StationaryPointIsFixed) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(3, 3),
                          Eigen::VectorXd::Zero(3)),
             Regularizer::lp(0.5), 0.2, ConstraintSet::isotone_nonneg(3));
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  const Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  const EtaSearchResult res =
      eta_linesearch(pb, x, v, pb.grad_smooth(x), 1.0, SolverConfig{});
  EXPECT_EQ(res.trials, 1);
  EXPECT_EQ(res.v, v);
}

// Accepted eta stays below the descent-lemma bound: eta growth stops no later
// than the largest per-coordinate surrogate curvature over the reachable
// interval, divided by tau. The interval radius uses the smallest eta any
// trial can take, which is eta_init because the search only grows eta.
TEST(EtaSearch, AcceptedEtaRespectsCurvatureBound) {
  const CsInstance inst = gen_cs_instance(5, 4, 3, 0.1, 17);
  const double lambda = 0.1;
  Problem pb = ordered_lp_problem(inst, lambda, 0.5);
  SolverConfig config;

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Eigen::VectorXd x = ordered_gaussian(5, 1000 + seed);
    const Eigen::VectorXd v = pb.reg().psi(x.cwiseAbs());
    const Eigen::VectorXd grad = pb.grad_smooth(x);
    const double gamma = 1.0;
    const Eigen::VectorXd y = (x - gamma * grad).cwiseAbs();

    double max_slope = 0.0;
    for (Eigen::Index i = 0; i < 5; ++i) {
      max_slope = std::max(
          max_slope, std::abs(g_right_deriv(v[i], y[i], gamma, pb.reg())));
    }
    const double radius =
        2.0 * 5.0 * (lambda + max_slope) / config.eta_init;
    double max_L = 0.0;
    for (Eigen::Index i = 0; i < 5; ++i) {
      const double a = v[i] + radius;
      max_L = std::max(max_L,
                       pb.reg().majorization_constant(a, y[i], gamma));
    }

    const EtaSearchResult res = eta_linesearch(pb, x, v, grad, gamma, config);
    EXPECT_LE(res.eta, std::max(config.eta_hi, max_L / config.tau) * (1 + 1e-12));
  }
}

TEST(DmaSolve, ZeroInstanceTerminatesImmediately) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(4, 4),
                          Eigen::VectorXd::Zero(4)),
             Regularizer::lp(0.5), 0.5, ConstraintSet::isotone_nonneg(4));
  const RunResult res =
      dma_solve(pb, SolverConfig{}, Eigen::VectorXd::Zero(4));
  EXPECT_EQ(res.reason, StopReason::StepTolerance);
  EXPECT_EQ(res.records.back().k, 1);
  EXPECT_EQ(res.x, Eigen::VectorXd::Zero(4));
  EXPECT_DOUBLE_EQ(res.records.back().objective, 0.0);
}

TEST(DmaSolve, RejectsInfeasibleStart) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(3, 3),
                          Eigen::VectorXd::Zero(3)),
             Regularizer::linear(), 1.0, ConstraintSet::isotone_nonneg(3));
  EXPECT_THROW(dma_solve(pb, SolverConfig{}, vec({1, 2, 3})),
               std::invalid_argument);
  EXPECT_THROW(dma_solve(pb, SolverConfig{}, vec({1, 1})),
               std::invalid_argument);
}

// Drives outer_step directly and checks every maintained invariant at every
// accepted iterate.
TEST(DmaSolver, PerIterateInvariants) {
  const CsInstance inst = gen_cs_instance(64, 32, 8, 0.1, 7);
  Problem pb = ordered_lp_problem(inst, 5e-2, 0.5);
  SolverConfig config;
  config.validate();

  const double smax = testing::svd_sigma_max(inst.A);
  const double lf = smax * smax;
  const double gamma_floor =
      std::min(config.gamma_min, config.tau / (config.c1 + lf));

  SolverState st;
  st.x = ordered_gaussian(64, 123);
  st.x_prev = st.x;
  st.v = pb.reg().psi(st.x.cwiseAbs());
  const double f0 = pb.objective_assuming_feasible(st.x);
  st.f_window.push_back(f0);

  double prev_f = f0;
  for (int k = 0; k < 300; ++k) {
    const Eigen::VectorXd x_before = st.x;
    const double ref_expected = st.window_max();
    outer_step(st, config, pb);

    // Feasibility is exact, not approximate.
    EXPECT_TRUE(pb.constraint().contains(st.x.cwiseAbs()));

    // v is maintained alongside x, never recomputed.
    const Eigen::VectorXd v_recomputed = pb.reg().psi(st.x.cwiseAbs());
    EXPECT_LE((st.v - v_recomputed).lpNorm<Eigen::Infinity>(), 1e-10);

    // Accepted steps satisfy the windowed sufficient-decrease test.
    const double f_now = pb.objective_assuming_feasible(st.x);
    const double step2 = (st.x - x_before).squaredNorm();
    EXPECT_DOUBLE_EQ(st.last_ls_reference, ref_expected);
    EXPECT_LE(f_now, ref_expected - 0.5 * config.c1 * step2 + 1e-12);
    EXPECT_LE(f_now, f0 + 1e-12);

    // Stepsize bound.
    EXPECT_LE(st.gamma_k, config.gamma_max);
    EXPECT_GE(st.gamma_k, gamma_floor * (1.0 - 1e-12));

    // Surrogate-acceptance consequence when gamma is below 1/L_f.
    if (st.gamma_k < 1.0 / lf) {
      const double guaranteed =
          prev_f - 0.5 * (1.0 / st.gamma_k - lf) * step2;
      EXPECT_LE(f_now, guaranteed + 1e-9 * (1.0 + std::abs(guaranteed)));
    }
    prev_f = f_now;
  }
}

TEST(DmaSolve, RecordsAreConsistent) {
  const CsInstance inst = gen_cs_instance(48, 24, 6, 0.1, 21);
  Problem pb = ordered_lp_problem(inst, 5e-2, 0.5);
  SolverConfig config;
  config.max_iters = 200;
  config.tol_step = 0.0;
  config.record_iterates = true;

  const Eigen::VectorXd x0 = ordered_gaussian(48, 456);
  const RunResult res = dma_solve(pb, config, x0);

  ASSERT_EQ(res.records.size(), 201u);
  ASSERT_EQ(res.iterates.size(), 201u);
  EXPECT_EQ(res.reason, StopReason::MaxIterations);

  const double f0 = res.records[0].objective;
  for (size_t k = 0; k + 1 < res.records.size(); ++k) {
    const IterRecord& prev = res.records[k];
    const IterRecord& next = res.records[k + 1];
    EXPECT_EQ(next.k, prev.k + 1);
    EXPECT_GT(next.time_s, prev.time_s);

    // Reported objective and step norms match the recorded iterates.
    EXPECT_DOUBLE_EQ(next.objective,
                     pb.objective_assuming_feasible(res.iterates[k + 1]));
    EXPECT_DOUBLE_EQ(next.step_norm,
                     (res.iterates[k + 1] - res.iterates[k]).norm());
    EXPECT_LE(next.objective, f0 + 1e-12);

    // The recorded acceptance reference is the max objective over the
    // preceding window [k - M, k].
    const size_t lo =
        k >= size_t(config.window) ? k - size_t(config.window) : 0;
    double expected_ref = -std::numeric_limits<double>::infinity();
    for (size_t i = lo; i <= k; ++i) {
      expected_ref = std::max(expected_ref, res.records[i].objective);
    }
    EXPECT_DOUBLE_EQ(next.ls_reference, expected_ref);
  }
}

TEST(DmaSolve, StepsVanishOverLongHorizon) {
  const CsInstance inst = gen_cs_instance(32, 16, 4, 0.1, 33);
  Problem pb = ordered_lp_problem(inst, 5e-2, 0.5);
  SolverConfig config;
  config.max_iters = 10000;
  config.tol_step = 0.0;

  double min_step = std::numeric_limits<double>::infinity();
  const IterObserver observer = [&](const IterRecord& rec,
                                    const Eigen::VectorXd&) {
    if (rec.k > 0) min_step = std::min(min_step, rec.step_norm);
  };
  dma_solve(pb, config, ordered_gaussian(32, 77), observer);
  EXPECT_LE(min_step, 1e-4);
}

TEST(DmaSolve, TimeLimitStopsTheRun) {
  const CsInstance inst = gen_cs_instance(64, 32, 8, 0.1, 41);
  Problem pb = ordered_lp_problem(inst, 5e-2, 0.5);
  SolverConfig config;
  config.tol_step = 0.0;
  config.max_iters = 100000000;
  config.max_time_s = 0.05;
  const RunResult res = dma_solve(pb, config, ordered_gaussian(64, 5));
  EXPECT_EQ(res.reason, StopReason::TimeLimit);
}

}  // namespace
}  // namespace ordsparse

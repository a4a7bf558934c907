#include "ordsparse/diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ordsparse/experiment.hpp"
#include "ordsparse/npg.hpp"
#include "ordsparse/solver.hpp"

namespace ordsparse {
namespace {

TEST(PsiOptResidual, ZeroAtOrigin) {
  for (const Regularizer& reg :
       {Regularizer::linear(), Regularizer::lp(0.5), Regularizer::log_pen(0.5)}) {
    Problem pb(LeastSquares(Eigen::MatrixXd::Identity(4, 4),
                            Eigen::VectorXd::Zero(4)),
               reg, 0.3, ConstraintSet::nonneg_orthant(4));
    const StationarityReport report =
        psi_opt_residual(pb, Eigen::VectorXd::Zero(4), 1.0);
    EXPECT_EQ(report.residual, 0.0);
    EXPECT_EQ(report.alpha, Eigen::VectorXd::Ones(4));
  }
}

TEST(PsiOptResidual, DomainErrors) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(3, 3),
                          Eigen::VectorXd::Zero(3)),
             Regularizer::linear(), 1.0, ConstraintSet::isotone_nonneg(3));
  Eigen::VectorXd increasing(3);
  increasing << 1, 2, 3;
  EXPECT_THROW(psi_opt_residual(pb, increasing, 1.0), std::invalid_argument);
  EXPECT_THROW(psi_opt_residual(pb, Eigen::VectorXd::Zero(3), 0.0),
               std::invalid_argument);
}

TEST(PsiOptResidual, SmallAtConvergedIterateAndLargeAfterPerturbation) {
  const CsInstance inst = gen_cs_instance(64, 32, 8, 0.1, 51);
  Problem pb(LeastSquares(inst.A, inst.b), Regularizer::lp(0.5), 5e-2,
             ConstraintSet::isotone_nonneg(64));
  SolverConfig config;
  config.tol_step = 1e-6;
  config.max_iters = 50000;
  const RunResult res = dma_solve(pb, config, ordered_gaussian(64, 4));
  ASSERT_EQ(res.reason, StopReason::StepTolerance);

  const double eta_last = res.records.back().eta;
  const StationarityReport report = psi_opt_residual(pb, res.x, eta_last);
  EXPECT_LE(report.residual, 1e-4);

  // Consistency with the step tolerance.
  const Eigen::VectorXd v = pb.reg().psi(res.x.cwiseAbs());
  EXPECT_LE(report.residual, 10.0 * config.tol_step * (1.0 + v.norm()));

  // A visible perturbation of one coordinate breaks the certificate.
  Eigen::VectorXd bumped = res.x;
  bumped[0] += 0.1 * detail::sign_nonneg(bumped[0]);
  const StationarityReport after = psi_opt_residual(pb, bumped, eta_last);
  EXPECT_GT(after.residual, 1e-3);
}

TEST(PsiOptResidual, ScaledResidualMonotoneInEta) {
  const CsInstance inst = gen_cs_instance(20, 12, 5, 0.1, 53);
  Problem pb(LeastSquares(inst.A, inst.b), Regularizer::log_pen(0.5), 8e-2,
             ConstraintSet::isotone_nonneg(20));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::VectorXd x = ordered_gaussian(20, 900 + seed);
    double prev = std::numeric_limits<double>::infinity();
    for (double eta : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double scaled = psi_opt_residual(pb, x, eta).residual / eta;
      EXPECT_LE(scaled, prev + 1e-10);
      prev = scaled;
    }
  }
}

TEST(UnconstrainedChecks, PassAtLassoMinimizer) {
  const CsInstance inst = gen_cs_instance(12, 30, 4, 0.05, 57);
  const double lambda = 0.1;
  SolverConfig config;
  config.tol_step = 1e-14;
  config.max_iters = 200000;
  const RunResult res = npg_solve(LeastSquares(inst.A, inst.b),
                                  ProxSpec::l1(lambda), config,
                                  Eigen::VectorXd::Zero(12));
  ASSERT_EQ(res.reason, StopReason::StepTolerance);

  Problem pb(LeastSquares(inst.A, inst.b), Regularizer::linear(), lambda,
             ConstraintSet::nonneg_orthant(12));
  const auto checks = check_unconstrained_stationarity(pb, res.x, 1e-6);
  for (const CoordCheck check : checks) {
    EXPECT_EQ(check, CoordCheck::Pass);
  }

  // A near-zero fixed-point residual certifies the same first-order
  // conditions at the tighter tolerance.
  const double residual = psi_opt_residual(pb, res.x, 1.0).residual;
  EXPECT_LE(residual, 1e-9 * (1.0 + res.x.norm()));
  for (const CoordCheck check :
       check_unconstrained_stationarity(pb, res.x, 1e-8)) {
    EXPECT_EQ(check, CoordCheck::Pass);
  }
}

TEST(UnconstrainedChecks, ZeroGradientAllPass) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(3, 3),
                          Eigen::VectorXd::Zero(3)),
             Regularizer::linear(), 0.5, ConstraintSet::nonneg_orthant(3));
  for (const CoordCheck check :
       check_unconstrained_stationarity(pb, Eigen::VectorXd::Zero(3), 1e-6)) {
    EXPECT_EQ(check, CoordCheck::Pass);
  }
}

TEST(UnconstrainedChecks, ConstructedViolationFails) {
  // Gradient at x is x - b; picking x away from the stationarity equation by
  // a unit makes the nonzero-coordinate check fail.
  Eigen::VectorXd b(2);
  b << 5, 0;
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(2, 2), b),
             Regularizer::linear(), 0.5, ConstraintSet::nonneg_orthant(2));
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;  // lambda*sgn + grad = 0.5 + (1 - 5) = -3.5
  const auto checks = check_unconstrained_stationarity(pb, x, 1e-6);
  EXPECT_EQ(checks[0], CoordCheck::Fail);
  EXPECT_EQ(checks[1], CoordCheck::Pass);  // |grad_2| = 0 <= lambda
}

TEST(UnconstrainedChecks, InfiniteSlopeMakesZerosVacuous) {
  Eigen::VectorXd b(2);
  b << 0, 100;  // huge gradient at the zero coordinate
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(2, 2), b),
             Regularizer::lp(0.5), 0.5, ConstraintSet::nonneg_orthant(2));
  const auto checks =
      check_unconstrained_stationarity(pb, Eigen::VectorXd::Zero(2), 1e-6);
  EXPECT_EQ(checks[0], CoordCheck::VacuousZero);
  EXPECT_EQ(checks[1], CoordCheck::VacuousZero);
}

TEST(UnconstrainedChecks, RejectsOrderedConstraint) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(3, 3),
                          Eigen::VectorXd::Zero(3)),
             Regularizer::linear(), 1.0, ConstraintSet::isotone_nonneg(3));
  EXPECT_THROW(
      check_unconstrained_stationarity(pb, Eigen::VectorXd::Zero(3), 1e-6),
      std::invalid_argument);
}

TEST(FiniteDiffCheck, Cases) {
  Problem pb(LeastSquares(Eigen::MatrixXd::Identity(2, 2),
                          Eigen::VectorXd::Zero(2)),
             Regularizer::linear(), 1.0, ConstraintSet::nonneg_orthant(2));
  Eigen::VectorXd x(2);
  x << 1, 2;
  EXPECT_LE(finite_diff_gradient_check(pb, x, 1e-6), 1e-6);
  EXPECT_THROW(finite_diff_gradient_check(pb, x, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace ordsparse

#pragma once

#include <Eigen/Core>

#include "ordsparse/constraint.hpp"
#include "ordsparse/regularizer.hpp"

namespace ordsparse {

/// Smooth data-fit term f(x) = scale * (1/2) ||A x - b||^2.
///
/// scale is 1 for the measurement models and 1/N for the lagged-regression
/// model. Immutable and shareable across threads.
class LeastSquares {
 public:
  LeastSquares(Eigen::MatrixXd A, Eigen::VectorXd b, double scale = 1.0);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  double scale() const { return scale_; }
  Eigen::Index rows() const { return A_.rows(); }
  Eigen::Index cols() const { return A_.cols(); }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const;

  /// scale * sigma_max(A)^2 via power iteration on A^T A (50 iterations or
  /// relative change below 1e-10). Used for diagnostics and stepsize bound
  /// checks only.
  double lipschitz_estimate() const;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double scale_;
};

/// Composite objective F(x) = f(x) + lambda * sum_i psi(|x_i|) + indicator
/// that |x| lies in Omega.
class Problem {
 public:
  Problem(LeastSquares smooth, Regularizer reg, double lambda,
          ConstraintSet constraint);

  const LeastSquares& smooth() const { return smooth_; }
  const Regularizer& reg() const { return reg_; }
  double lambda() const { return lambda_; }
  const ConstraintSet& constraint() const { return constraint_; }
  Eigen::Index dim() const { return constraint_.dim(); }

  Eigen::VectorXd grad_smooth(const Eigen::VectorXd& x) const;

  /// lambda * sum_i psi(|x_i|), accumulated in index order.
  double penalty(const Eigen::VectorXd& x) const;

  /// Exact membership test of |x| in Omega.
  bool feasible(const Eigen::VectorXd& x) const;

  /// F(x); +infinity when |x| is not in Omega (infeasibility is a value,
  /// not an error).
  double objective(const Eigen::VectorXd& x) const;

  /// F(x) for x known feasible by construction (solver iterates); skips the
  /// membership test.
  double objective_assuming_feasible(const Eigen::VectorXd& x) const;

  double lipschitz_estimate() const { return smooth_.lipschitz_estimate(); }

 private:
  LeastSquares smooth_;
  Regularizer reg_;
  double lambda_;
  ConstraintSet constraint_;
};

}  // namespace ordsparse

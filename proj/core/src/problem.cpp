#include "ordsparse/problem.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ordsparse {

LeastSquares::LeastSquares(Eigen::MatrixXd A, Eigen::VectorXd b, double scale)
    : A_(std::move(A)), b_(std::move(b)), scale_(scale) {
  if (A_.rows() != b_.size()) {
    throw std::invalid_argument("LeastSquares: A rows and b size disagree");
  }
  if (!(scale_ > 0.0)) {
    throw std::invalid_argument("LeastSquares: scale must be positive");
  }
}

double LeastSquares::value(const Eigen::VectorXd& x) const {
  if (x.size() != A_.cols()) {
    throw std::invalid_argument("LeastSquares::value: dimension mismatch");
  }
  return scale_ * 0.5 * (A_ * x - b_).squaredNorm();
}

Eigen::VectorXd LeastSquares::grad(const Eigen::VectorXd& x) const {
  if (x.size() != A_.cols()) {
    throw std::invalid_argument("LeastSquares::grad: dimension mismatch");
  }
  return scale_ * (A_.transpose() * (A_ * x - b_));
}

double LeastSquares::lipschitz_estimate() const {
  const Eigen::Index n = A_.cols();
  if (n == 0) return 0.0;
  // Deterministic start so repeated runs report the same estimate.
  std::mt19937_64 rng(0x5eedULL);
  Eigen::VectorXd v(n);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(rng);
  v.normalize();

  double lambda_prev = 0.0;
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXd w = A_.transpose() * (A_ * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double lambda = v.dot(A_.transpose() * (A_ * v));
    if (it > 0 &&
        std::abs(lambda - lambda_prev) <= 1e-10 * std::max(1.0, lambda)) {
      lambda_prev = lambda;
      break;
    }
    lambda_prev = lambda;
  }
  return scale_ * lambda_prev;
}

Problem::Problem(LeastSquares smooth, Regularizer reg, double lambda,
                 ConstraintSet constraint)
    : smooth_(std::move(smooth)),
      reg_(reg),
      lambda_(lambda),
      constraint_(constraint) {
  if (smooth_.cols() != constraint_.dim()) {
    throw std::invalid_argument(
        "Problem: constraint dimension does not match A columns");
  }
  if (!(lambda_ > 0.0)) {
    throw std::invalid_argument("Problem: lambda must be positive");
  }
}

Eigen::VectorXd Problem::grad_smooth(const Eigen::VectorXd& x) const {
  return smooth_.grad(x);
}

double Problem::penalty(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += reg_.psi(std::abs(x[i]));
  return lambda_ * s;
}

bool Problem::feasible(const Eigen::VectorXd& x) const {
  return constraint_.contains(x.cwiseAbs());
}

double Problem::objective(const Eigen::VectorXd& x) const {
  if (!feasible(x)) return std::numeric_limits<double>::infinity();
  return objective_assuming_feasible(x);
}

double Problem::objective_assuming_feasible(const Eigen::VectorXd& x) const {
  return smooth_.value(x) + penalty(x);
}

}  // namespace ordsparse

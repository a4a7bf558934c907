#pragma once

#include <Eigen/Core>
#include <optional>

#include "ordsparse/constraint.hpp"
#include "ordsparse/problem.hpp"
#include "ordsparse/solver.hpp"

namespace ordsparse {

/// Soft threshold: sign(y) * max(|y| - t, 0), t = gamma * lambda.
double prox_l1(double y, double t);

/// Scalar proximal map of t -> lambda |t|^p for p in (0, 1): minimizer of
/// (1/(2 gamma))(t - y)^2 + lambda |t|^p. Computed by comparing t = 0 with
/// the stationary root on (0, |y|) found by safeguarded Newton/bisection to
/// 1e-12. Ties resolve to 0 (the sparser point).
double prox_lp(double y, double gamma, double lambda, double p);

/// Scalar proximal map of t -> lambda log(1 + |t|/eps): candidates are 0 and
/// the real roots of t^2 + (eps - |y|) t + (gamma lambda - eps |y|) = 0; the
/// candidate with the least objective wins. Odd in y.
double prox_log(double y, double gamma, double lambda, double eps);

/// Proximal map of lambda ||.||_1 + indicator(|.| in Omega):
/// sgn(y) ∘ P_Omega(|y| - t e) with t = gamma * lambda. Exact for the
/// isotone cones (and for the orthant, where it reduces to the soft
/// threshold).
Eigen::VectorXd prox_l1_isotone(const Eigen::VectorXd& y, double t,
                                const ConstraintSet& cs);

enum class ProxKind { L1, LpPower, LogPen, L1Isotone };

/// Nonsmooth part P(z) of an NPG model and its proximal map.
class ProxSpec {
 public:
  static ProxSpec l1(double lambda);
  static ProxSpec lp_power(double lambda, double p);
  static ProxSpec log_pen(double lambda, double eps);
  static ProxSpec l1_isotone(double lambda, ConstraintSet cs);

  ProxKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double p() const { return p_; }
  double eps() const { return eps_; }
  const ConstraintSet& constraint() const;

  /// P(z); +infinity when the L1Isotone indicator is violated.
  double penalty(const Eigen::VectorXd& z) const;

  /// argmin_u (1/(2 gamma)) ||u - y||^2 + P(u), componentwise or via the
  /// constrained map for L1Isotone.
  Eigen::VectorXd apply(const Eigen::VectorXd& y, double gamma) const;

 private:
  ProxSpec(ProxKind kind, double lambda, double p, double eps,
           std::optional<ConstraintSet> cs)
      : kind_(kind), lambda_(lambda), p_(p), eps_(eps), cs_(std::move(cs)) {}

  ProxKind kind_;
  double lambda_;
  double p_;
  double eps_;
  std::optional<ConstraintSet> cs_;
};

/// Nonmonotone proximal gradient solver for min f(x) + P(x): BB stepsize
/// proposal and the same windowed sufficient-decrease acceptance as
/// dma_solve (shared SolverConfig; the eta fields are ignored and recorded
/// as 0).
RunResult npg_solve(const LeastSquares& smooth, const ProxSpec& prox,
                    const SolverConfig& config, const Eigen::VectorXd& x0,
                    const IterObserver& observer = {});

}  // namespace ordsparse

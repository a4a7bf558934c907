#pragma once

#include <Eigen/Core>

namespace ordsparse {

enum class PenaltyFamily { Linear, Lp, Log };

/// Right-hand derivative of psi at zero. It is infinite for the Lp family,
/// so the value is tagged instead of letting an IEEE infinity leak into
/// downstream arithmetic.
struct PsiSlopeAtZero {
  bool finite = true;
  double value = 0.0;
};

/// Sparsity-inducing scalar function psi together with its inverse phi.
///
/// Supported families:
///   Linear:  psi(t) = t
///   Lp:      psi(t) = t^p with 0 < p <= 0.5
///   Log:     psi(t) = log(1 + t/eps) with eps > 0
///
/// psi: R+ -> R+ is concave, strictly increasing and fixes 0, so phi = psi^-1
/// exists on R+, is convex, and has a locally Lipschitz right derivative.
/// All evaluations are elementwise-pure; vector overloads map the scalar ops.
/// Instances are immutable after construction and safe to share across
/// threads.
class Regularizer {
 public:
  static Regularizer linear();
  static Regularizer lp(double p);
  static Regularizer log_pen(double eps);

  PenaltyFamily family() const { return family_; }
  double p() const { return p_; }
  double eps() const { return eps_; }

  /// psi(t) for t >= 0. Throws std::invalid_argument on negative input.
  double psi(double t) const;

  /// phi(v) = psi^-1(v) for v >= 0. Throws std::invalid_argument on negative
  /// input.
  double phi(double v) const;

  /// Right derivative phi'_+(v) for v >= 0. Equals 0 at v = 0 for the Lp
  /// family (the exponent 1/p - 1 is positive).
  double phi_right_deriv(double v) const;

  /// psi'(t) for t > 0.
  double psi_deriv(double t) const;

  /// psi'_+(0): 1 (Linear), +infinity marker (Lp), 1/eps (Log).
  PsiSlopeAtZero psi_right_deriv_at_zero() const;

  /// sup of phi'' over [0, a]; tight curvature constant of the convex
  /// inverse. Zero for the Linear family.
  double phi_curvature_sup(double a) const;

  /// Descent constant L such that g(s) <= g(t) + g'_+(t)(s-t) + (L/2)(s-t)^2
  /// on [0, a] for g(t) = (1/(2 gamma)) (phi(t) - b)^2 with |b| = b_abs:
  ///
  ///   L = (c/gamma) (sup_[0,a] |phi| + b_abs)
  ///     + (1/gamma) (sup_[0,a] |phi'_+| + a c / 2)^2,   c = sup_[0,a] phi''.
  ///
  /// Diagnostic only; not on the solver hot path.
  double majorization_constant(double a, double b_abs, double gamma) const;

  Eigen::VectorXd psi(const Eigen::VectorXd& t) const;
  Eigen::VectorXd phi(const Eigen::VectorXd& v) const;

 private:
  Regularizer(PenaltyFamily family, double p, double eps)
      : family_(family), p_(p), eps_(eps) {}

  PenaltyFamily family_;
  double p_;
  double eps_;
};

}  // namespace ordsparse

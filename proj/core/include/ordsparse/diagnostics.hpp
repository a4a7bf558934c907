#pragma once

#include <Eigen/Core>
#include <vector>

#include "ordsparse/problem.hpp"

namespace ordsparse {

enum class CoordCheck { Pass, Fail, VacuousZero };

/// Computable optimality certificate. A zero residual at eta_used witnesses
/// the fixed-point stationarity condition: v = psi(|x|) solves the strongly
/// convex surrogate min (eta/2)||w - v||^2 + <mu, w> over psi(Omega) with
/// mu_i = lambda + alpha_i * grad_i f(x) * phi'_+(psi(|x_i|)).
struct StationarityReport {
  double residual = 0.0;
  double eta_used = 1.0;
  Eigen::VectorXd alpha;  // entries in {-1, +1}
  std::vector<CoordCheck> coord_checks;  // unconstrained checks; empty unless
                                         // filled for the orthant case
};

/// Projection residual of the stationarity fixed point at the supplied eta:
/// || v - P_{psi(Omega)}(v - mu/eta) || with v = psi(|x|). The sign vector
/// alpha is sgn(x_i) for nonzero coordinates, -sgn(grad_i f(x)) for zero
/// coordinates with nonzero gradient, and +1 otherwise (immaterial: then
/// mu_i = lambda). Requires |x| in Omega and eta > 0.
StationarityReport psi_opt_residual(const Problem& problem,
                                    const Eigen::VectorXd& x, double eta);

/// First-order checks for Omega = R^n_+ (rejects other constraint kinds):
/// nonzero coordinates must satisfy |lambda psi'(|x_i|) sgn(x_i) +
/// grad_i f(x)| <= tol; zero coordinates must satisfy |grad_i f(x)| <=
/// lambda psi'_+(0) + tol when psi'_+(0) is finite, and pass vacuously when
/// it is infinite.
std::vector<CoordCheck> check_unconstrained_stationarity(
    const Problem& problem, const Eigen::VectorXd& x, double tol);

/// Max componentwise relative error between central finite differences of
/// the smooth term and grad_smooth. h must be positive.
double finite_diff_gradient_check(const Problem& problem,
                                  const Eigen::VectorXd& x, double h);

}  // namespace ordsparse

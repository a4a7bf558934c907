#include "ordsparse/regularizer.hpp"

#include <cmath>
#include <stdexcept>

namespace ordsparse {

Regularizer Regularizer::linear() {
  return Regularizer(PenaltyFamily::Linear, 0.0, 0.0);
}

Regularizer Regularizer::lp(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument(
        "Regularizer::lp: exponent p must lie in (0, 0.5], got " +
        std::to_string(p));
  }
  return Regularizer(PenaltyFamily::Lp, p, 0.0);
}

Regularizer Regularizer::log_pen(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument(
        "Regularizer::log_pen: eps must be positive, got " +
        std::to_string(eps));
  }
  return Regularizer(PenaltyFamily::Log, 0.0, eps);
}

namespace {
void require_nonneg(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": argument must be nonnegative");
  }
}
}  // namespace

double Regularizer::psi(double t) const {
  require_nonneg(t, "Regularizer::psi");
  switch (family_) {
    case PenaltyFamily::Linear:
      return t;
    case PenaltyFamily::Lp:
      return std::pow(t, p_);
    case PenaltyFamily::Log:
      return std::log1p(t / eps_);
  }
  return 0.0;
}

double Regularizer::phi(double v) const {
  require_nonneg(v, "Regularizer::phi");
  switch (family_) {
    case PenaltyFamily::Linear:
      return v;
    case PenaltyFamily::Lp:
      return std::pow(v, 1.0 / p_);
    case PenaltyFamily::Log:
      return eps_ * std::expm1(v);
  }
  return 0.0;
}

double Regularizer::phi_right_deriv(double v) const {
  require_nonneg(v, "Regularizer::phi_right_deriv");
  switch (family_) {
    case PenaltyFamily::Linear:
      return 1.0;
    case PenaltyFamily::Lp:
      // exponent 1/p - 1 >= 1, so the derivative vanishes at v = 0
      return v == 0.0 ? 0.0 : (1.0 / p_) * std::pow(v, 1.0 / p_ - 1.0);
    case PenaltyFamily::Log:
      return eps_ * std::exp(v);
  }
  return 0.0;
}

double Regularizer::psi_deriv(double t) const {
  if (!(t > 0.0)) {
    throw std::invalid_argument(
        "Regularizer::psi_deriv: argument must be positive");
  }
  switch (family_) {
    case PenaltyFamily::Linear:
      return 1.0;
    case PenaltyFamily::Lp:
      return p_ * std::pow(t, p_ - 1.0);
    case PenaltyFamily::Log:
      return 1.0 / (eps_ + t);
  }
  return 0.0;
}

PsiSlopeAtZero Regularizer::psi_right_deriv_at_zero() const {
  switch (family_) {
    case PenaltyFamily::Linear:
      return {true, 1.0};
    case PenaltyFamily::Lp:
      return {false, 0.0};
    case PenaltyFamily::Log:
      return {true, 1.0 / eps_};
  }
  return {true, 0.0};
}

double Regularizer::phi_curvature_sup(double a) const {
  require_nonneg(a, "Regularizer::phi_curvature_sup");
  switch (family_) {
    case PenaltyFamily::Linear:
      return 0.0;
    case PenaltyFamily::Lp: {
      // phi''(v) = (1/p)(1/p - 1) v^(1/p - 2); with p <= 0.5 the exponent is
      // nonnegative, so the supremum over [0, a] sits at v = a.
      const double inv_p = 1.0 / p_;
      return inv_p * (inv_p - 1.0) * std::pow(a, inv_p - 2.0);
    }
    case PenaltyFamily::Log:
      return eps_ * std::exp(a);
  }
  return 0.0;
}

double Regularizer::majorization_constant(double a, double b_abs,
                                          double gamma) const {
  if (!(a > 0.0)) {
    throw std::invalid_argument(
        "Regularizer::majorization_constant: interval bound a must be "
        "positive");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument(
        "Regularizer::majorization_constant: gamma must be positive");
  }
  require_nonneg(b_abs, "Regularizer::majorization_constant");

  const double c = phi_curvature_sup(a);
  // phi and phi'_+ are nonnegative and nondecreasing, so both suprema over
  // [0, a] are attained at a.
  const double sup_phi = phi(a);
  const double sup_dphi = phi_right_deriv(a);
  const double quad = sup_dphi + 0.5 * a * c;
  return (c / gamma) * (sup_phi + b_abs) + (quad * quad) / gamma;
}

Eigen::VectorXd Regularizer::psi(const Eigen::VectorXd& t) const {
  Eigen::VectorXd out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) out[i] = psi(t[i]);
  return out;
}

Eigen::VectorXd Regularizer::phi(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = phi(v[i]);
  return out;
}

}  // namespace ordsparse

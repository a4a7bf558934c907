#include "ordsparse/npg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ordsparse {

double prox_l1(double y, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("prox_l1: threshold must be nonnegative");
  }
  const double mag = std::abs(y) - t;
  if (mag <= 0.0) return 0.0;
  return y < 0.0 ? -mag : mag;
}

double prox_lp(double y, double gamma, double lambda, double p) {
  if (!(gamma > 0.0) || !(lambda >= 0.0)) {
    throw std::invalid_argument("prox_lp: gamma must be positive and lambda nonnegative");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("prox_lp: exponent must lie in (0,1)");
  }
  if (lambda == 0.0) return y;
  const double mag = std::abs(y);
  if (mag == 0.0) return 0.0;
  const double sign = y < 0.0 ? -1.0 : 1.0;

  // rho(t) = t + gamma lambda p t^(p-1) is the stationarity map; it attains
  // its minimum at t_star and increases afterwards. A stationary point of
  // the scalar objective exists only when rho(t_star) <= |y|.
  const double glp = gamma * lambda * p;
  auto rho = [&](double t) { return t + glp * std::pow(t, p - 1.0); };
  const double t_star = std::pow(glp * (1.0 - p), 1.0 / (2.0 - p));
  if (rho(t_star) > mag) return 0.0;

  // Larger root of rho(t) = |y| on [t_star, |y|]; safeguarded Newton.
  double lo = t_star;
  double hi = mag;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = rho(t) - mag;
    if (f > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double df = 1.0 + glp * (p - 1.0) * std::pow(t, p - 2.0);
    double next = df > 0.0 ? t - f / df : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) {
      t = next;
      break;
    }
    t = next;
  }

  const double at_zero = mag * mag / (2.0 * gamma);
  const double diff = t - mag;
  const double at_root = diff * diff / (2.0 * gamma) + lambda * std::pow(t, p);
  // Ties resolve to zero, the sparser of the two global minimizers.
  if (at_zero <= at_root) return 0.0;
  return sign * t;
}

double prox_log(double y, double gamma, double lambda, double eps) {
  if (!(gamma > 0.0) || !(lambda >= 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("prox_log: parameter out of domain");
  }
  if (lambda == 0.0) return y;
  const double mag = std::abs(y);
  if (mag == 0.0) return 0.0;
  const double sign = y < 0.0 ? -1.0 : 1.0;

  auto objective = [&](double t) {
    const double d = t - mag;
    return d * d / (2.0 * gamma) + lambda * std::log1p(t / eps);
  };

  // Stationary points on t > 0 solve t^2 + (eps - |y|) t + (gamma lambda -
  // eps |y|) = 0.
  const double b = eps - mag;
  const double c = gamma * lambda - eps * mag;
  const double disc = b * b - 4.0 * c;
  double best = 0.0;
  double best_val = objective(0.0);
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    for (double root : {(-b + sq) / 2.0, (-b - sq) / 2.0}) {
      if (root > 0.0 && objective(root) < best_val) {
        best = root;
        best_val = objective(root);
      }
    }
  }
  return sign * best;
}

Eigen::VectorXd prox_l1_isotone(const Eigen::VectorXd& y, double t,
                                const ConstraintSet& cs) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("prox_l1_isotone: threshold must be nonnegative");
  }
  if (y.size() != cs.dim()) {
    throw std::invalid_argument("prox_l1_isotone: dimension mismatch");
  }
  Eigen::VectorXd shifted(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    shifted[i] = std::abs(y[i]) - t;
  }
  Eigen::VectorXd w = cs.project(shifted);
  Eigen::VectorXd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    out[i] = detail::sign_nonneg(y[i]) * w[i];
  }
  return out;
}

ProxSpec ProxSpec::l1(double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProxSpec: lambda must be nonnegative");
  return ProxSpec(ProxKind::L1, lambda, 0.0, 0.0, std::nullopt);
}

ProxSpec ProxSpec::lp_power(double lambda, double p) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProxSpec: lambda must be nonnegative");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("ProxSpec: exponent must lie in (0,1)");
  }
  return ProxSpec(ProxKind::LpPower, lambda, p, 0.0, std::nullopt);
}

ProxSpec ProxSpec::log_pen(double lambda, double eps) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProxSpec: lambda must be nonnegative");
  if (!(eps > 0.0)) throw std::invalid_argument("ProxSpec: eps must be positive");
  return ProxSpec(ProxKind::LogPen, lambda, 0.0, eps, std::nullopt);
}

ProxSpec ProxSpec::l1_isotone(double lambda, ConstraintSet cs) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProxSpec: lambda must be nonnegative");
  return ProxSpec(ProxKind::L1Isotone, lambda, 0.0, 0.0, std::move(cs));
}

const ConstraintSet& ProxSpec::constraint() const {
  if (!cs_) throw std::logic_error("ProxSpec: no constraint set attached");
  return *cs_;
}

double ProxSpec::penalty(const Eigen::VectorXd& z) const {
  double s = 0.0;
  switch (kind_) {
    case ProxKind::L1:
      for (Eigen::Index i = 0; i < z.size(); ++i) s += std::abs(z[i]);
      return lambda_ * s;
    case ProxKind::LpPower:
      for (Eigen::Index i = 0; i < z.size(); ++i)
        s += std::pow(std::abs(z[i]), p_);
      return lambda_ * s;
    case ProxKind::LogPen:
      for (Eigen::Index i = 0; i < z.size(); ++i)
        s += std::log1p(std::abs(z[i]) / eps_);
      return lambda_ * s;
    case ProxKind::L1Isotone: {
      if (!cs_->contains(z.cwiseAbs())) {
        return std::numeric_limits<double>::infinity();
      }
      for (Eigen::Index i = 0; i < z.size(); ++i) s += std::abs(z[i]);
      return lambda_ * s;
    }
  }
  return 0.0;
}

Eigen::VectorXd ProxSpec::apply(const Eigen::VectorXd& y, double gamma) const {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("ProxSpec::apply: gamma must be positive");
  }
  Eigen::VectorXd out(y.size());
  switch (kind_) {
    case ProxKind::L1: {
      const double t = gamma * lambda_;
      for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = prox_l1(y[i], t);
      return out;
    }
    case ProxKind::LpPower:
      for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = prox_lp(y[i], gamma, lambda_, p_);
      return out;
    case ProxKind::LogPen:
      for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = prox_log(y[i], gamma, lambda_, eps_);
      return out;
    case ProxKind::L1Isotone:
      return prox_l1_isotone(y, gamma * lambda_, *cs_);
  }
  return out;
}

RunResult npg_solve(const LeastSquares& smooth, const ProxSpec& prox,
                    const SolverConfig& config, const Eigen::VectorXd& x0,
                    const IterObserver& observer) {
  config.validate();
  if (x0.size() != smooth.cols()) {
    throw std::invalid_argument("npg_solve: x0 dimension mismatch");
  }
  if (prox.kind() == ProxKind::L1Isotone &&
      !prox.constraint().contains(x0.cwiseAbs())) {
    throw std::invalid_argument("npg_solve: |x0| must lie in Omega");
  }

  auto objective = [&](const Eigen::VectorXd& x) {
    return smooth.value(x) + prox.penalty(x);
  };

  SolverState state;
  state.x = x0;
  state.x_prev = x0;
  const double f0 = objective(x0);
  state.f_window.push_back(f0);

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed_s = [&t_start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  RunResult result;
  result.reason = StopReason::MaxIterations;
  IterRecord rec{0, f0, 0.0, 0.0, 0.0, elapsed_s(), f0};
  result.records.push_back(rec);
  if (config.record_iterates) result.iterates.push_back(state.x);
  if (observer) observer(rec, state.x);

  while (state.k < config.max_iters) {
    const Eigen::VectorXd grad = smooth.grad(state.x);
    double gamma = state.k == 0 ? 1.0
                                : bb_stepsize(state.x, state.x_prev,
                                              smooth.A(), smooth.scale());
    gamma = std::clamp(gamma, config.gamma_min, config.gamma_max);

    const double ls_reference = state.window_max();
    for (int backtracks = 0;; ++backtracks) {
      if (backtracks > config.max_gamma_backtracks) {
        throw SolverFault(
            "npg line search exceeded its backtrack cap; sufficient decrease "
            "never held, which indicates a numerical inconsistency");
      }
      Eigen::VectorXd u = prox.apply(state.x - gamma * grad, gamma);
      const double f_trial = objective(u);
      const double step_sq = (u - state.x).squaredNorm();
      if (f_trial <= ls_reference - 0.5 * config.c1 * step_sq) {
        state.x_prev = std::move(state.x);
        state.x = std::move(u);
        state.gamma_k = gamma;
        state.eta_bar_k = 0.0;
        state.last_step_norm = std::sqrt(step_sq);
        state.last_ls_reference = ls_reference;
        detail::push_window(state.f_window, config.window, f_trial);
        ++state.k;
        break;
      }
      gamma *= config.tau;
    }

    rec.k = state.k;
    rec.objective = state.f_window.back();
    rec.gamma = state.gamma_k;
    rec.eta = 0.0;
    rec.step_norm = state.last_step_norm;
    rec.time_s = std::max(elapsed_s(), result.records.back().time_s + 1e-9);
    rec.ls_reference = state.last_ls_reference;
    result.records.push_back(rec);
    if (config.record_iterates) result.iterates.push_back(state.x);
    if (observer) observer(rec, state.x);

    const double rel = state.last_step_norm / std::max(1.0, state.x.norm());
    if (config.tol_step > 0.0 && rel < config.tol_step) {
      result.reason = StopReason::StepTolerance;
      break;
    }
    if (elapsed_s() >= config.max_time_s) {
      result.reason = StopReason::TimeLimit;
      break;
    }
  }

  result.x = state.x;
  return result;
}

}  // namespace ordsparse

#include "ordsparse/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ordsparse/npg.hpp"

namespace ordsparse {

void SolverConfig::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(c1 > 0.0)) fail("SolverConfig: c1 must be positive");
  if (!(tau > 0.0 && tau < 1.0)) fail("SolverConfig: tau must lie in (0,1)");
  if (window < 0) fail("SolverConfig: window must be nonnegative");
  if (!(gamma_min > 0.0 && gamma_min <= gamma_max))
    fail("SolverConfig: need 0 < gamma_min <= gamma_max");
  if (!(eta_lo > 0.0 && eta_lo <= eta_hi))
    fail("SolverConfig: need 0 < eta_lo <= eta_hi");
  if (!(eta_init >= eta_lo && eta_init <= eta_hi))
    fail("SolverConfig: eta_init must lie in [eta_lo, eta_hi]");
  if (max_iters < 0) fail("SolverConfig: max_iters must be nonnegative");
  if (!(max_time_s > 0.0)) fail("SolverConfig: max_time_s must be positive");
  if (!(tol_step >= 0.0)) fail("SolverConfig: tol_step must be nonnegative");
  if (max_eta_growths < 1 || max_gamma_backtracks < 1)
    fail("SolverConfig: line search caps must be at least 1");
}

double SolverState::window_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double f : f_window) m = std::max(m, f);
  return m;
}

double bb_stepsize(const Eigen::VectorXd& x_k, const Eigen::VectorXd& x_km1,
                   const Eigen::MatrixXd& A, double scale) {
  const Eigen::VectorXd d = x_k - x_km1;
  const double dd = d.squaredNorm();
  const double curvature = scale * (A * d).squaredNorm();
  if (dd == 0.0 || curvature == 0.0) return 1e8;
  return std::clamp(dd / curvature, 1e-8, 1e8);
}

double g_right_deriv(double v_i, double y_i, double gamma,
                     const Regularizer& reg) {
  if (!(v_i >= 0.0) || !(y_i >= 0.0)) {
    throw std::invalid_argument("g_right_deriv: v and y must be nonnegative");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("g_right_deriv: gamma must be positive");
  }
  return (reg.phi(v_i) - y_i) * reg.phi_right_deriv(v_i) / gamma;
}

Eigen::VectorXd step1b(const Eigen::VectorXd& v_k,
                       const Eigen::VectorXd& coeffs, double eta,
                       const ConstraintSet& cs) {
  if (v_k.size() != coeffs.size()) {
    throw std::invalid_argument("step1b: dimension mismatch");
  }
  if (!(eta > 0.0)) {
    throw std::invalid_argument("step1b: eta must be positive");
  }
  return cs.project(v_k - coeffs / eta);
}

namespace {

// Surrogate G_gamma(v) = lambda <e, v> + sum_i (1/(2 gamma)) (phi(v_i) - y_i)^2.
double surrogate_value(const Eigen::VectorXd& v, const Eigen::VectorXd& y,
                       double gamma, double lambda, const Regularizer& reg) {
  double lin = 0.0;
  double quad = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    lin += v[i];
    const double r = reg.phi(v[i]) - y[i];
    quad += r * r;
  }
  return lambda * lin + quad / (2.0 * gamma);
}

}  // namespace

namespace detail {

void push_window(std::deque<double>& window, int max_len, double value) {
  window.push_back(value);
  while (static_cast<int>(window.size()) > max_len + 1) window.pop_front();
}

}  // namespace detail

EtaSearchResult eta_linesearch(const Problem& problem,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& v,
                               const Eigen::VectorXd& grad, double gamma_tilde,
                               const SolverConfig& config) {
  const Regularizer& reg = problem.reg();
  const ConstraintSet& cs = problem.constraint();
  const double lambda = problem.lambda();

  const Eigen::VectorXd d = x - gamma_tilde * grad;
  const Eigen::VectorXd y = d.cwiseAbs();

  Eigen::VectorXd coeffs(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    coeffs[i] = lambda + g_right_deriv(v[i], y[i], gamma_tilde, reg);
  }

  const double g_ref = surrogate_value(v, y, gamma_tilde, lambda, reg);

  double eta =
      config.eta_follows_gamma ? 1.0 / gamma_tilde : config.eta_init;
  int growths = 0;
  EtaSearchResult result;
  for (;;) {
    ++result.trials;
    Eigen::VectorXd v_trial = step1b(v, coeffs, eta, cs);
    if (surrogate_value(v_trial, y, gamma_tilde, lambda, reg) <= g_ref) {
      result.v = std::move(v_trial);
      result.eta = eta;
      return result;
    }
    if (++growths > config.max_eta_growths) {
      throw SolverFault(
          "eta line search exceeded its growth cap; surrogate descent never "
          "held, which indicates a numerical inconsistency");
    }
    eta /= config.tau;
  }
}

namespace detail {

void enforce_membership(Eigen::VectorXd& w, const ConstraintSet& cs) {
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) w[i] = 0.0;
  }
  if (cs.kind() == ConstraintKind::NonnegOrthant) return;
  const Eigen::Index block =
      cs.kind() == ConstraintKind::IsotoneNonneg ? cs.dim() : cs.block_len();
  for (Eigen::Index start = 0; start < w.size(); start += block) {
    for (Eigen::Index i = start + 1; i < start + block; ++i) {
      if (w[i] > w[i - 1]) w[i] = w[i - 1];
    }
  }
}

}  // namespace detail

void outer_step(SolverState& state, const SolverConfig& config,
                const Problem& problem) {
  const Regularizer& reg = problem.reg();
  const ConstraintSet& cs = problem.constraint();
  const double lambda = problem.lambda();

  const Eigen::VectorXd grad = problem.grad_smooth(state.x);
  double gamma = state.k == 0
                     ? 1.0
                     : bb_stepsize(state.x, state.x_prev, problem.smooth().A(),
                                   problem.smooth().scale());
  gamma = std::clamp(gamma, config.gamma_min, config.gamma_max);

  // With the Linear family and eta = 1/gamma the inner subproblem has the
  // exact closed form sgn(d) ∘ P(|d| - gamma lambda e); the surrogate test
  // holds automatically there, so no eta growth can occur.
  const bool reduced = config.eta_follows_gamma &&
                       reg.family() == PenaltyFamily::Linear;

  const double ls_reference = state.window_max();

  for (int backtracks = 0;; ++backtracks) {
    if (backtracks > config.max_gamma_backtracks) {
      throw SolverFault(
          "outer line search exceeded its backtrack cap; sufficient decrease "
          "never held, which indicates a numerical inconsistency");
    }

    Eigen::VectorXd u;
    Eigen::VectorXd v_trial;
    double eta = 0.0;
    if (reduced) {
      const Eigen::VectorXd d = state.x - gamma * grad;
      u = prox_l1_isotone(d, gamma * lambda, cs);
      v_trial = u.cwiseAbs();
      eta = 1.0 / gamma;
    } else {
      EtaSearchResult inner =
          eta_linesearch(problem, state.x, state.v, grad, gamma, config);
      const Eigen::VectorXd d = state.x - gamma * grad;
      Eigen::VectorXd u_abs = reg.phi(inner.v);
      detail::enforce_membership(u_abs, cs);
      u.resize(u_abs.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        u[i] = detail::sign_nonneg(d[i]) * u_abs[i];
      }
      v_trial = std::move(inner.v);
      eta = inner.eta;
    }

    const double f_trial = problem.objective_assuming_feasible(u);
    const double step_sq = (u - state.x).squaredNorm();
    if (f_trial <= ls_reference - 0.5 * config.c1 * step_sq) {
      state.x_prev = std::move(state.x);
      state.x = std::move(u);
      state.v = std::move(v_trial);
      state.gamma_k = gamma;
      state.eta_bar_k = eta;
      state.last_step_norm = std::sqrt(step_sq);
      state.last_ls_reference = ls_reference;
      detail::push_window(state.f_window, config.window, f_trial);
      ++state.k;
      return;
    }
    gamma *= config.tau;
  }
}

RunResult dma_solve(const Problem& problem, const SolverConfig& config,
                    const Eigen::VectorXd& x0, const IterObserver& observer) {
  config.validate();
  if (x0.size() != problem.dim()) {
    throw std::invalid_argument("dma_solve: x0 dimension mismatch");
  }
  if (!problem.feasible(x0)) {
    throw std::invalid_argument("dma_solve: |x0| must lie in Omega");
  }

  SolverState state;
  state.x = x0;
  state.x_prev = x0;
  state.v = problem.reg().psi(x0.cwiseAbs());
  const double f0 = problem.objective_assuming_feasible(x0);
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
    outer_step(state, config, problem);

    rec.k = state.k;
    rec.objective = state.f_window.back();
    rec.gamma = state.gamma_k;
    rec.eta = state.eta_bar_k;
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

#pragma once

#include <Eigen/Core>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordsparse/problem.hpp"

namespace ordsparse {

/// Raised when a line search exceeds its iteration cap, signaling a
/// numerical inconsistency (the theory guarantees finite termination).
class SolverFault : public std::runtime_error {
 public:
  explicit SolverFault(const std::string& what) : std::runtime_error(what) {}
};

struct SolverConfig {
  double c1 = 1e-4;       // sufficient-decrease constant
  double tau = 0.5;       // backtracking factor, in (0,1)
  int window = 4;         // M: acceptance compares against the last M+1 values
  double gamma_min = 1e-8;
  double gamma_max = 1e8;
  double eta_lo = 1e-8;
  double eta_hi = 1.0;
  double eta_init = 1.0;  // re-initialized on every entry to the inner search
  long max_iters = 100000;
  double max_time_s = std::numeric_limits<double>::infinity();
  double tol_step = 1e-6;  // relative step tolerance; 0 disables

  /// Force eta = 1/gamma each iteration. With the Linear family this makes
  /// the inner subproblem the exact soft-threshold-plus-projection step, and
  /// the run coincides with the L1-constrained proximal gradient baseline.
  bool eta_follows_gamma = false;

  /// Keep a copy of every accepted iterate in RunResult::iterates.
  bool record_iterates = false;

  int max_eta_growths = 1000;
  int max_gamma_backtracks = 200;

  /// Throws std::invalid_argument when a parameter is out of domain.
  void validate() const;
};

enum class StopReason { StepTolerance, MaxIterations, TimeLimit };

struct IterRecord {
  long k = 0;
  double objective = 0.0;  // F(x^k)
  double gamma = 0.0;      // accepted gamma_k (0 for the initial record)
  double eta = 0.0;        // accepted eta_k (0 where not applicable)
  double step_norm = 0.0;  // ||x^k - x^{k-1}||
  double time_s = 0.0;     // wall time when x^k was accepted
  double ls_reference = 0.0;  // window max the acceptance test compared against
};

struct RunResult {
  Eigen::VectorXd x;
  std::vector<IterRecord> records;  // records[k] describes iterate k, k = 0..K
  StopReason reason = StopReason::MaxIterations;
  std::vector<Eigen::VectorXd> iterates;  // filled when record_iterates
};

/// Called after each accepted iterate (including the initial point).
using IterObserver =
    std::function<void(const IterRecord&, const Eigen::VectorXd& x)>;

/// Spectral stepsize ||d||^2 / (scale ||A d||^2) with d = x_k - x_km1,
/// clipped to [1e-8, 1e8]; returns 1e8 when ||A d|| = 0 (the step is
/// re-searched anyway, and 0/0 must not occur).
double bb_stepsize(const Eigen::VectorXd& x_k, const Eigen::VectorXd& x_km1,
                   const Eigen::MatrixXd& A, double scale);

/// Right derivative of g_gamma^i(v) = (1/(2 gamma)) (phi(v) - y)^2:
/// (phi(v_i) - y_i) * phi'_+(v_i) / gamma, with y_i = |x_i - gamma grad_i|.
double g_right_deriv(double v_i, double y_i, double gamma,
                     const Regularizer& reg);

/// Linearized subproblem of the inner step: the minimizer of
/// (eta/2)||v - v_k||^2 + <coeffs, v - v_k> over psi(Omega), which after
/// completing the square is the projection of v_k - coeffs/eta.
Eigen::VectorXd step1b(const Eigen::VectorXd& v_k,
                       const Eigen::VectorXd& coeffs, double eta,
                       const ConstraintSet& cs);

struct EtaSearchResult {
  Eigen::VectorXd v;  // accepted trial point in psi(Omega)
  double eta = 0.0;   // accepted eta
  int trials = 0;     // number of subproblem solves
};

/// Inner search: starting from eta_init, grows eta by 1/tau until the
/// surrogate G(v_trial) does not exceed G(v_k). x, v describe the current
/// iterate (v = psi(|x|)); grad = grad f(x). Throws SolverFault after
/// max_eta_growths growths.
EtaSearchResult eta_linesearch(const Problem& problem,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& v,
                               const Eigen::VectorXd& grad, double gamma_tilde,
                               const SolverConfig& config);

/// Per-solve mutable state. One solve owns its state exclusively; the
/// referenced Problem is shared immutable.
struct SolverState {
  Eigen::VectorXd x;       // current iterate
  Eigen::VectorXd x_prev;  // previous iterate (= x at k = 0)
  Eigen::VectorXd v;       // maintained v = psi(|x|)
  std::deque<double> f_window;  // last window+1 objective values
  double gamma_k = 0.0;
  double eta_bar_k = 0.0;
  double last_step_norm = 0.0;
  double last_ls_reference = 0.0;
  long k = 0;

  double window_max() const;
};

/// One outer iteration: BB proposal clipped to [gamma_min, gamma_max], inner
/// eta search, sign restoration, and the nonmonotone acceptance test with
/// gamma backtracking. Updates state in place. Throws SolverFault when a
/// backtracking cap is exceeded.
void outer_step(SolverState& state, const SolverConfig& config,
                const Problem& problem);

/// Full solve from x0 (|x0| must lie in Omega, else std::invalid_argument).
/// Stops on the relative step tolerance, the iteration cap, or the time
/// limit, whichever comes first.
RunResult dma_solve(const Problem& problem, const SolverConfig& config,
                    const Eigen::VectorXd& x0, const IterObserver& observer = {});

namespace detail {

/// sgn with sgn(0) = +1.
inline double sign_nonneg(double t) { return t >= 0.0 ? 1.0 : -1.0; }

/// Append an objective value, keeping at most max_len + 1 entries.
void push_window(std::deque<double>& window, int max_len, double value);

/// Clamp a magnitude vector onto Omega without moving any entry by more than
/// rounding noise; repairs possible sub-ulp monotonicity loss from libm.
void enforce_membership(Eigen::VectorXd& w, const ConstraintSet& cs);

}  // namespace detail

}  // namespace ordsparse

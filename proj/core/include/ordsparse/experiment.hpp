#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ordsparse/solver.hpp"

namespace ordsparse {

/// Deterministic standard-normal stream: Box-Muller over mt19937_64, so the
/// same seed yields the same draws on every platform and standard library.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Synthetic ordered compressed-sensing instance: x_true is s-sparse
/// standard Gaussian, reordered so magnitudes are nonincreasing; A has
/// column-normalized iid Gaussian entries; b = A x_true + sigma * noise.
struct CsInstance {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd x_true;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

CsInstance gen_cs_instance(Eigen::Index n, Eigen::Index m, Eigen::Index s,
                           double sigma, std::uint64_t seed);

/// Gaussian vector reordered so magnitudes are nonincreasing (|x| lies in
/// the isotone cone); the initial-point recipe for the ordered models.
Eigen::VectorXd ordered_gaussian(Eigen::Index n, std::uint64_t seed);

/// Same recipe applied independently to each block of length block_len.
Eigen::VectorXd block_ordered_gaussian(Eigen::Index n, Eigen::Index block_len,
                                       std::uint64_t seed);

/// Recovery-error history of one algorithm on one instance:
/// err[k] = ||x^k - x_true||, time_s[k] = wall time when x^k was accepted.
struct ErrorTrace {
  std::string name;
  std::vector<double> time_s;
  std::vector<double> err;
};

/// Normalized best-so-far error sampled on a shared time grid. value[j] is
/// nonincreasing in j and starts at 1 whenever err[0] exceeds the cross-
/// algorithm minimum.
struct ErrorCurve {
  std::string name;
  std::vector<double> value;
  double err_min = 0.0;
};

std::vector<double> uniform_time_grid(double maxtime, int samples = 200);

/// Per-algorithm curves E(t) = min{ e(k) : T(k) <= t } with
/// e(k) = (err(k) - err_min) / (err(0) - err_min), where err_min is the
/// smallest error any algorithm attains on this instance. Before the first
/// record the curve holds its starting value.
std::vector<ErrorCurve> error_curves(const std::vector<ErrorTrace>& traces,
                                     const std::vector<double>& grid);

/// 10^x for x uniformly spaced over [lo_exp, hi_exp].
std::vector<double> logspace(double lo_exp, double hi_exp, int count);

/// Time-lagged design from a raw table Z whose column 0 is the response and
/// columns 1..p are predictors. Row i (1-based) of the output takes the
/// response at raw row offset + i + K - 1 and, for predictor j and lag k,
/// the predictor value at raw row offset + i + K - k. offset = 0 builds the
/// training split; offset = N builds the validation split.
struct LaggedData {
  Eigen::MatrixXd A;  // N x (p*K)
  Eigen::VectorXd b;  // N
};

LaggedData build_lagged_dataset(const Eigen::MatrixXd& Z, Eigen::Index K,
                                Eigen::Index N, Eigen::Index offset);

/// Columnwise standardization with the sample standard deviation (n-1
/// denominator). Throws on zero-variance columns.
struct Standardized {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd col_mean;
  Eigen::VectorXd col_std;
  double b_mean = 0.0;
  double b_std = 1.0;
};

Standardized standardize_fit(const Eigen::MatrixXd& A,
                             const Eigen::VectorXd& b);

/// b_pred = b_std * (A_val' x_star) + b_mean * e, where A_val' standardizes
/// each column of A_val with the validation split's own statistics.
Eigen::VectorXd predict_validation(const Eigen::VectorXd& x_star,
                                   const Eigen::MatrixXd& A_val, double b_mean,
                                   double b_std);

/// Named-column table; the on-disk form is plain CSV with a header row.
struct DataTable {
  std::vector<std::string> columns;
  Eigen::MatrixXd values;
};

/// Expected column layout of the ozone data file.
const std::vector<std::string>& ozone_columns();

/// Extracts [response | 8 predictors] from an ozone table, dropping the
/// day-of-year column. Throws when the header does not match.
Eigen::MatrixXd ozone_response_predictors(const DataTable& table);

/// Deterministic stand-in with the ozone schema so the lagged pipeline runs
/// offline. Values are smooth seasonal-ish series with noise, not real data.
DataTable synthetic_ozone_table(Eigen::Index rows = 30,
                                std::uint64_t seed = 1976);

/// Prepared lagged-regression experiment: standardized training split, raw
/// validation split, and the training response statistics used to map
/// predictions back to the original scale.
struct LaggedExperiment {
  Eigen::MatrixXd A_train;  // standardized
  Eigen::VectorXd b_train;  // standardized
  Eigen::MatrixXd A_val;    // raw
  Eigen::VectorXd b_val;    // raw
  double b_mean = 0.0;
  double b_std = 1.0;
  Eigen::Index block_len = 1;
  double smooth_scale = 1.0;  // 1/N
};

LaggedExperiment make_lagged_experiment(const Eigen::MatrixXd& Z,
                                        Eigen::Index K, Eigen::Index N);

/// Solves the block-ordered model at one (q, lambda): q in (0, 0.5] runs the
/// doubly majorized solver with the power penalty, q = 1 runs the proximal
/// gradient baseline with the L1 penalty.
Eigen::VectorXd solve_lagged(const LaggedExperiment& exp, double q,
                             double lambda, const Eigen::VectorXd& x0,
                             const SolverConfig& config);

struct SweepEntry {
  double lambda = 0.0;
  double identification_error = 0.0;  // ||A x* - b|| on training data
  double validation_error = 0.0;      // ||b_pred - b_val||
};

/// One solve per lambda with the shared initial point; rows are keyed by
/// lambda index, so multithreaded runs merge deterministically.
std::vector<SweepEntry> lambda_sweep(const LaggedExperiment& exp, double q,
                                     const std::vector<double>& lambdas,
                                     const Eigen::VectorXd& x0,
                                     const SolverConfig& config,
                                     int threads = 1);

}  // namespace ordsparse

#include "ordsparse/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ordsparse/npg.hpp"
#include "ordsparse/parallel.hpp"

namespace ordsparse {

double GaussianSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit mantissas; u1 in (0, 1] so the log is finite.
  const double u1 =
      (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

namespace {

// Stable reorder by nonincreasing magnitude.
void order_by_magnitude(Eigen::VectorXd& x) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[idx[size_t(i)]];
  x = std::move(out);
}

}  // namespace

CsInstance gen_cs_instance(Eigen::Index n, Eigen::Index m, Eigen::Index s,
                           double sigma, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("gen_cs_instance: n and m must be positive");
  }
  if (s < 0 || s > n) {
    throw std::invalid_argument("gen_cs_instance: need 0 <= s <= n");
  }
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("gen_cs_instance: sigma must be nonnegative");
  }

  GaussianSampler g(seed);
  CsInstance inst;
  inst.sigma = sigma;
  inst.seed = seed;

  inst.x_true = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < s; ++i) inst.x_true[i] = g.next();
  order_by_magnitude(inst.x_true);

  inst.A.resize(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) inst.A(i, j) = g.next();
    const double norm = inst.A.col(j).norm();
    if (norm > 0.0) inst.A.col(j) /= norm;
  }

  Eigen::VectorXd noise(m);
  for (Eigen::Index i = 0; i < m; ++i) noise[i] = g.next();
  inst.b = inst.A * inst.x_true + sigma * noise;
  return inst;
}

Eigen::VectorXd ordered_gaussian(Eigen::Index n, std::uint64_t seed) {
  GaussianSampler g(seed);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = g.next();
  order_by_magnitude(x);
  return x;
}

Eigen::VectorXd block_ordered_gaussian(Eigen::Index n, Eigen::Index block_len,
                                       std::uint64_t seed) {
  if (block_len <= 0 || n % block_len != 0) {
    throw std::invalid_argument(
        "block_ordered_gaussian: block length must divide n");
  }
  GaussianSampler g(seed);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = g.next();
  for (Eigen::Index start = 0; start < n; start += block_len) {
    Eigen::VectorXd blockv = x.segment(start, block_len);
    order_by_magnitude(blockv);
    x.segment(start, block_len) = blockv;
  }
  return x;
}

std::vector<double> uniform_time_grid(double maxtime, int samples) {
  if (!(maxtime > 0.0) || samples < 2) {
    throw std::invalid_argument("uniform_time_grid: bad grid parameters");
  }
  std::vector<double> grid(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    grid[size_t(i)] = maxtime * double(i) / double(samples - 1);
  }
  return grid;
}

std::vector<ErrorCurve> error_curves(const std::vector<ErrorTrace>& traces,
                                     const std::vector<double>& grid) {
  if (traces.empty()) {
    throw std::invalid_argument("error_curves: no traces");
  }
  double err_min = std::numeric_limits<double>::infinity();
  for (const ErrorTrace& tr : traces) {
    if (tr.err.empty() || tr.err.size() != tr.time_s.size()) {
      throw std::invalid_argument("error_curves: malformed trace");
    }
    err_min = std::min(err_min,
                       *std::min_element(tr.err.begin(), tr.err.end()));
  }

  std::vector<ErrorCurve> curves;
  curves.reserve(traces.size());
  for (const ErrorTrace& tr : traces) {
    ErrorCurve curve;
    curve.name = tr.name;
    curve.err_min = err_min;
    curve.value.resize(grid.size());
    const double denom = tr.err[0] - err_min;
    double best = std::numeric_limits<double>::infinity();
    size_t pos = 0;
    for (size_t j = 0; j < grid.size(); ++j) {
      while (pos < tr.time_s.size() && tr.time_s[pos] <= grid[j]) {
        best = std::min(best, tr.err[pos]);
        ++pos;
      }
      if (denom <= 0.0) {
        curve.value[j] = 0.0;  // already optimal at the start
      } else if (!std::isfinite(best)) {
        curve.value[j] = 1.0;  // before the first record
      } else {
        curve.value[j] = (best - err_min) / denom;
      }
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<double> logspace(double lo_exp, double hi_exp, int count) {
  if (count < 1) throw std::invalid_argument("logspace: count must be positive");
  std::vector<double> out(static_cast<size_t>(count));
  if (count == 1) {
    out[0] = std::pow(10.0, lo_exp);
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double e = lo_exp + (hi_exp - lo_exp) * double(i) / double(count - 1);
    out[size_t(i)] = std::pow(10.0, e);
  }
  return out;
}

LaggedData build_lagged_dataset(const Eigen::MatrixXd& Z, Eigen::Index K,
                                Eigen::Index N, Eigen::Index offset) {
  if (K < 1 || N < 1 || offset < 0) {
    throw std::invalid_argument("build_lagged_dataset: bad parameters");
  }
  const Eigen::Index p = Z.cols() - 1;
  if (p < 1) {
    throw std::invalid_argument(
        "build_lagged_dataset: table needs a response and predictors");
  }
  if (Z.rows() < offset + N + K - 1) {
    throw std::invalid_argument("build_lagged_dataset: not enough rows");
  }

  LaggedData data;
  data.A.resize(N, p * K);
  data.b.resize(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    data.b[i] = Z(offset + i + K - 1, 0);
    for (Eigen::Index j = 0; j < p; ++j) {
      for (Eigen::Index k = 0; k < K; ++k) {
        data.A(i, j * K + k) = Z(offset + i + K - k - 1, j + 1);
      }
    }
  }
  return data;
}

namespace {

void standardize_columns(Eigen::MatrixXd& A, Eigen::VectorXd& mean,
                         Eigen::VectorXd& std_dev) {
  const Eigen::Index rows = A.rows();
  if (rows < 2) {
    throw std::invalid_argument("standardize: need at least two rows");
  }
  mean.resize(A.cols());
  std_dev.resize(A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const double m = A.col(j).mean();
    const double var = (A.col(j).array() - m).square().sum() / double(rows - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 1e-13 * std::max(1.0, std::abs(m)))) {
      throw std::invalid_argument("standardize: zero-variance column");
    }
    A.col(j) = (A.col(j).array() - m) / sd;
    mean[j] = m;
    std_dev[j] = sd;
  }
}

}  // namespace

Standardized standardize_fit(const Eigen::MatrixXd& A,
                             const Eigen::VectorXd& b) {
  if (A.rows() != b.size()) {
    throw std::invalid_argument("standardize_fit: A rows and b size disagree");
  }
  Standardized out;
  out.A = A;
  standardize_columns(out.A, out.col_mean, out.col_std);

  const Eigen::Index rows = b.size();
  out.b_mean = b.mean();
  const double var =
      (b.array() - out.b_mean).square().sum() / double(rows - 1);
  out.b_std = std::sqrt(var);
  if (!(out.b_std > 1e-13 * std::max(1.0, std::abs(out.b_mean)))) {
    throw std::invalid_argument("standardize_fit: constant response");
  }
  out.b = (b.array() - out.b_mean) / out.b_std;
  return out;
}

Eigen::VectorXd predict_validation(const Eigen::VectorXd& x_star,
                                   const Eigen::MatrixXd& A_val, double b_mean,
                                   double b_std) {
  if (x_star.size() != A_val.cols()) {
    throw std::invalid_argument("predict_validation: dimension mismatch");
  }
  Eigen::MatrixXd A_std = A_val;
  Eigen::VectorXd mean, sd;
  standardize_columns(A_std, mean, sd);
  return (b_std * (A_std * x_star)).array() + b_mean;
}

const std::vector<std::string>& ozone_columns() {
  static const std::vector<std::string> cols = {
      "ozone", "vh",  "wind", "humidity", "temp",
      "ibh",   "dpg", "ibt",  "vis",      "doy"};
  return cols;
}

Eigen::MatrixXd ozone_response_predictors(const DataTable& table) {
  const auto& expected = ozone_columns();
  if (table.columns != expected) {
    throw std::invalid_argument(
        "ozone_response_predictors: unexpected column layout");
  }
  // Drop the trailing day-of-year column; keep [ozone | 8 predictors].
  return table.values.leftCols(static_cast<Eigen::Index>(expected.size()) - 1);
}

DataTable synthetic_ozone_table(Eigen::Index rows, std::uint64_t seed) {
  if (rows < 2) {
    throw std::invalid_argument("synthetic_ozone_table: need at least 2 rows");
  }
  GaussianSampler g(seed);
  DataTable table;
  table.columns = ozone_columns();
  table.values.resize(rows, static_cast<Eigen::Index>(table.columns.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double day = double(r);
    const double season = std::sin(2.0 * M_PI * day / 30.0);
    const double vh = 5700.0 + 120.0 * season + 15.0 * g.next();
    const double wind = 5.0 + 2.0 * std::cos(2.0 * M_PI * day / 11.0) +
                        0.8 * g.next();
    const double humidity = 55.0 + 18.0 * season + 4.0 * g.next();
    const double temp = 68.0 + 12.0 * season + 2.5 * g.next();
    const double ibh = 2500.0 + 900.0 * std::cos(2.0 * M_PI * day / 17.0) +
                       120.0 * g.next();
    const double dpg = 10.0 + 30.0 * std::sin(2.0 * M_PI * day / 23.0) +
                       5.0 * g.next();
    const double ibt = 180.0 + 45.0 * season + 8.0 * g.next();
    const double vis = 140.0 + 70.0 * std::cos(2.0 * M_PI * day / 13.0) +
                       12.0 * g.next();
    const double ozone = 8.0 + 0.002 * (vh - 5700.0) + 0.12 * (temp - 68.0) -
                         0.015 * (vis - 140.0) + 0.6 * g.next();
    table.values.row(r) << ozone, vh, wind, humidity, temp, ibh, dpg, ibt,
        vis, day + 1.0;
  }
  return table;
}

LaggedExperiment make_lagged_experiment(const Eigen::MatrixXd& Z,
                                        Eigen::Index K, Eigen::Index N) {
  LaggedData train = build_lagged_dataset(Z, K, N, 0);
  LaggedData val = build_lagged_dataset(Z, K, N, N);

  Standardized std_train = standardize_fit(train.A, train.b);

  LaggedExperiment exp;
  exp.A_train = std::move(std_train.A);
  exp.b_train = std::move(std_train.b);
  exp.A_val = std::move(val.A);
  exp.b_val = std::move(val.b);
  exp.b_mean = std_train.b_mean;
  exp.b_std = std_train.b_std;
  exp.block_len = K;
  exp.smooth_scale = 1.0 / double(N);
  return exp;
}

Eigen::VectorXd solve_lagged(const LaggedExperiment& exp, double q,
                             double lambda, const Eigen::VectorXd& x0,
                             const SolverConfig& config) {
  const ConstraintSet cs =
      ConstraintSet::block_isotone(exp.A_train.cols(), exp.block_len);
  LeastSquares smooth(exp.A_train, exp.b_train, exp.smooth_scale);
  if (q == 1.0) {
    return npg_solve(smooth, ProxSpec::l1_isotone(lambda, cs), config, x0).x;
  }
  if (q > 0.0 && q <= 0.5) {
    Problem problem(std::move(smooth), Regularizer::lp(q), lambda, cs);
    return dma_solve(problem, config, x0).x;
  }
  throw std::invalid_argument(
      "solve_lagged: exponent must lie in (0, 0.5] or equal 1");
}

std::vector<SweepEntry> lambda_sweep(const LaggedExperiment& exp, double q,
                                     const std::vector<double>& lambdas,
                                     const Eigen::VectorXd& x0,
                                     const SolverConfig& config, int threads) {
  std::vector<SweepEntry> table(lambdas.size());
  parallel_for_indices(
      static_cast<int>(lambdas.size()), threads, [&](int i) {
        const double lambda = lambdas[size_t(i)];
        const Eigen::VectorXd x_star = solve_lagged(exp, q, lambda, x0, config);
        SweepEntry entry;
        entry.lambda = lambda;
        entry.identification_error =
            (exp.A_train * x_star - exp.b_train).norm();
        const Eigen::VectorXd b_pred =
            predict_validation(x_star, exp.A_val, exp.b_mean, exp.b_std);
        entry.validation_error = (b_pred - exp.b_val).norm();
        table[size_t(i)] = entry;
      });
  return table;
}

}  // namespace ordsparse

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "commands.hpp"
#include "ordsparse/experiment.hpp"
#include "ordsparse/parallel.hpp"

namespace ordsparse::cli {

namespace {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "dma_lp", "npg_lp", "npg_l1c", "npg_l1", "dma_log", "npg_log"};
  return names;
}

// Runs the six comparison solvers on one instance and returns their
// recovery-error traces.
std::vector<ErrorTrace> run_all_solvers(const CsInstance& inst,
                                        const Eigen::VectorXd& x0,
                                        const BenchCsOptions& opt,
                                        const SolverConfig& config) {
  const Eigen::Index n = inst.A.cols();
  const ConstraintSet iso = ConstraintSet::isotone_nonneg(n);
  LeastSquares smooth(inst.A, inst.b);

  std::vector<ErrorTrace> traces;
  traces.reserve(6);
  auto tracker = [&](ErrorTrace& trace) {
    return [&trace, &inst](const IterRecord& rec, const Eigen::VectorXd& x) {
      trace.time_s.push_back(rec.time_s);
      trace.err.push_back((x - inst.x_true).norm());
    };
  };

  for (const std::string& name : algorithm_names()) {
    ErrorTrace trace;
    trace.name = name;
    if (name == "dma_lp") {
      Problem pb(smooth, Regularizer::lp(opt.p), opt.lambda_lp, iso);
      dma_solve(pb, config, x0, tracker(trace));
    } else if (name == "npg_lp") {
      npg_solve(smooth, ProxSpec::lp_power(opt.lambda_lp, opt.p), config, x0,
                tracker(trace));
    } else if (name == "npg_l1c") {
      npg_solve(smooth, ProxSpec::l1_isotone(opt.lambda_lp, iso), config, x0,
                tracker(trace));
    } else if (name == "npg_l1") {
      npg_solve(smooth, ProxSpec::l1(opt.lambda_lp), config, x0,
                tracker(trace));
    } else if (name == "dma_log") {
      Problem pb(smooth, Regularizer::log_pen(opt.eps), opt.lambda_log, iso);
      dma_solve(pb, config, x0, tracker(trace));
    } else {
      npg_solve(smooth, ProxSpec::log_pen(opt.lambda_log, opt.eps), config,
                x0, tracker(trace));
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace

int cmd_bench_cs(const BenchCsOptions& opt, const std::string& command_line) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.out_dir.empty()) throw ConfigError("--out-dir is required");
  if (opt.seeds < 1) throw ConfigError("--seeds must be positive");
  if (!(opt.maxtime > 0.0)) throw ConfigError("--maxtime must be positive");
  if ((opt.n > 4096 || opt.m > 2048) && !opt.full_scale) {
    throw ConfigError(
        "this triple exceeds the desk-scale budget; pass --full-scale to run "
        "it anyway");
  }

  std::filesystem::create_directories(opt.out_dir);

  SolverConfig config;
  config.tol_step = opt.tol;
  config.max_iters = opt.maxiters;
  config.max_time_s = opt.maxtime;
  config.validate();

  const std::vector<double> grid = uniform_time_grid(opt.maxtime, opt.samples);

  // curves[seed][alg]
  std::vector<std::vector<ErrorCurve>> curves(size_t(opt.seeds));
  std::vector<std::uint64_t> seeds(size_t(opt.seeds));
  std::vector<std::uint64_t> x0_seeds(size_t(opt.seeds));
  parallel_for_indices(opt.seeds, opt.threads, [&](int i) {
    const std::uint64_t instance_seed = opt.seed_base + std::uint64_t(i);
    const std::uint64_t x0_seed = opt.seed_base + 900000 + std::uint64_t(i);
    seeds[size_t(i)] = instance_seed;
    x0_seeds[size_t(i)] = x0_seed;
    const CsInstance inst =
        gen_cs_instance(opt.n, opt.m, opt.s, opt.sigma, instance_seed);
    const Eigen::VectorXd x0 = ordered_gaussian(opt.n, x0_seed);
    curves[size_t(i)] = error_curves(run_all_solvers(inst, x0, opt, config),
                                     grid);
  });

  // Pointwise average across instances.
  const size_t n_algs = algorithm_names().size();
  std::vector<std::vector<double>> mean(n_algs,
                                        std::vector<double>(grid.size(), 0.0));
  for (const auto& per_seed : curves) {
    for (size_t a = 0; a < n_algs; ++a) {
      for (size_t j = 0; j < grid.size(); ++j) {
        mean[a][j] += per_seed[a].value[j] / double(opt.seeds);
      }
    }
  }

  const std::string curves_path =
      (std::filesystem::path(opt.out_dir) / "error_curves.csv").string();
  {
    std::ofstream out(curves_path);
    if (!out) throw std::runtime_error("cannot write " + curves_path);
    out << std::setprecision(17);
    out << "t";
    for (const std::string& name : algorithm_names()) out << ',' << name;
    out << '\n';
    for (size_t j = 0; j < grid.size(); ++j) {
      out << grid[j];
      for (size_t a = 0; a < n_algs; ++a) out << ',' << mean[a][j];
      out << '\n';
    }
  }

  RunManifest manifest;
  manifest.command_line = command_line;
  manifest.config["n"] = opt.n;
  manifest.config["m"] = opt.m;
  manifest.config["s"] = opt.s;
  manifest.config["sigma"] = opt.sigma;
  manifest.config["lambda_lp"] = opt.lambda_lp;
  manifest.config["lambda_log"] = opt.lambda_log;
  manifest.config["p"] = opt.p;
  manifest.config["eps"] = opt.eps;
  manifest.config["maxtime"] = opt.maxtime;
  manifest.config["tol"] = opt.tol;
  manifest.config["samples"] = opt.samples;
  manifest.config["algorithms"] = algorithm_names();
  manifest.config["x0_seeds"] = x0_seeds;
  manifest.seeds = seeds;
  manifest.timing_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  manifest.outputs = {curves_path};
  write_manifest(
      (std::filesystem::path(opt.out_dir) / "manifest.json").string(),
      manifest);
  return kExitOk;
}

}  // namespace ordsparse::cli

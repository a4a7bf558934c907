#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "commands.hpp"
#include "ordsparse/experiment.hpp"

namespace ordsparse::cli {

namespace {

std::vector<std::pair<std::string, double>> parse_q_list(
    const std::string& spec) {
  std::vector<std::pair<std::string, double>> qs;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    double q = 0.0;
    try {
      q = std::stod(token);
    } catch (const std::exception&) {
      throw ConfigError("bad --q-list entry '" + token + "'");
    }
    if (!((q > 0.0 && q <= 0.5) || q == 1.0)) {
      throw ConfigError(
          "--q-list entries must lie in (0, 0.5] or equal 1, got " + token);
    }
    qs.emplace_back(token, q);
  }
  if (qs.empty()) throw ConfigError("--q-list is empty");
  return qs;
}

}  // namespace

int cmd_bench_lagged(const BenchLaggedOptions& opt,
                     const std::string& command_line) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.out_dir.empty()) throw ConfigError("--out-dir is required");

  Eigen::MatrixXd Z;
  std::string data_source;
  if (opt.synthetic) {
    Z = ozone_response_predictors(synthetic_ozone_table());
    data_source = "synthetic stand-in";
  } else {
    if (!std::filesystem::exists(opt.data)) {
      if (opt.fetch) {
        std::string error;
        if (!fetch_laozone(opt.data, &error)) {
          throw ConfigError("could not fetch the ozone data: " + error);
        }
      } else {
        throw ConfigError("data file not found: " + opt.data +
                          " (pass --fetch to download it, or --synthetic for "
                          "the offline stand-in)");
      }
    }
    Z = ozone_response_predictors(read_table_csv(opt.data));
    data_source = opt.data;
  }

  const Eigen::Index K = opt.lag > 0 ? opt.lag : (opt.synthetic ? 5 : 20);
  const Eigen::Index N = opt.train > 0 ? opt.train : (opt.synthetic ? 10 : 155);
  if (Z.rows() < 2 * N + K - 1) {
    throw ConfigError("the table is too short for the requested lag and "
                      "training size");
  }

  std::filesystem::create_directories(opt.out_dir);

  const LaggedExperiment exp = make_lagged_experiment(Z, K, N);
  const Eigen::VectorXd x0 =
      block_ordered_gaussian(exp.A_train.cols(), K, opt.x0_seed);

  SolverConfig config;
  config.tol_step = opt.tol;
  config.max_iters = opt.maxiters;
  config.validate();

  const std::vector<double> lambdas = logspace(-4.0, 1.0, opt.lambda_count);

  RunManifest manifest;
  manifest.command_line = command_line;
  manifest.config["data"] = data_source;
  manifest.config["K"] = K;
  manifest.config["N"] = N;
  manifest.config["predictors"] = Z.cols() - 1;
  manifest.config["lambda_count"] = opt.lambda_count;
  manifest.config["tol"] = opt.tol;
  manifest.config["x0_seed"] = opt.x0_seed;
  // The validation design is standardized with its own column statistics at
  // prediction time.
  manifest.config["validation_standardization"] = "validation-split statistics";
  manifest.seeds = {opt.x0_seed};

  for (const auto& [q_name, q] : parse_q_list(opt.q_list)) {
    const auto table = lambda_sweep(exp, q, lambdas, x0, config, opt.threads);

    const std::string sweep_path =
        (std::filesystem::path(opt.out_dir) / ("sweep_q" + q_name + ".csv"))
            .string();
    {
      std::ofstream out(sweep_path);
      if (!out) throw std::runtime_error("cannot write " + sweep_path);
      out << std::setprecision(17);
      out << "lambda,identification_error,validation_error\n";
      for (const SweepEntry& entry : table) {
        out << entry.lambda << ',' << entry.identification_error << ','
            << entry.validation_error << '\n';
      }
    }
    manifest.outputs.push_back(sweep_path);

    const auto best = std::min_element(
        table.begin(), table.end(), [](const SweepEntry& a, const SweepEntry& b) {
          return a.validation_error < b.validation_error;
        });
    manifest.config["best"][q_name]["lambda"] = best->lambda;
    manifest.config["best"][q_name]["validation_error"] =
        best->validation_error;
    manifest.config["best"][q_name]["identification_error"] =
        best->identification_error;

    // Predictions at the best lambda, on the original response scale.
    const Eigen::VectorXd x_star =
        solve_lagged(exp, q, best->lambda, x0, config);
    const Eigen::VectorXd b_pred =
        predict_validation(x_star, exp.A_val, exp.b_mean, exp.b_std);
    const std::string pred_path =
        (std::filesystem::path(opt.out_dir) /
         ("predictions_q" + q_name + ".csv"))
            .string();
    {
      std::ofstream out(pred_path);
      if (!out) throw std::runtime_error("cannot write " + pred_path);
      out << std::setprecision(17);
      out << "observed,predicted\n";
      for (Eigen::Index i = 0; i < b_pred.size(); ++i) {
        out << exp.b_val[i] << ',' << b_pred[i] << '\n';
      }
    }
    manifest.outputs.push_back(pred_path);
  }

  manifest.timing_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(
      (std::filesystem::path(opt.out_dir) / "manifest.json").string(),
      manifest);
  return kExitOk;
}

}  // namespace ordsparse::cli

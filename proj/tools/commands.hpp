#pragma once

#include <string>

#include "common.hpp"

namespace ordsparse::cli {

struct SolveOptions {
  ModelOptions model;
  SolverOptions solver;
  std::string a_path;
  std::string b_path;
  std::string x0 = "zero";
  std::string out = "trace.csv";
};

struct DiagOptions {
  std::string problem_json;
  std::string x_path;
  std::string trace_path;
  double eta = 0.0;  // 0: take the last accepted eta from --trace, else 1
  double tol = 1e-6;
  std::string out;  // empty: stdout
};

struct BenchCsOptions {
  Eigen::Index n = 256;
  Eigen::Index m = 54;
  Eigen::Index s = 18;
  double sigma = 0.1;
  int seeds = 10;
  std::uint64_t seed_base = 1;
  double maxtime = 4.0;
  double tol = 0.0;  // disabled: runs are time-budgeted
  long maxiters = 100000000;
  double lambda_lp = 5e-2;
  double lambda_log = 8e-2;
  double p = 0.5;
  double eps = 0.5;
  int samples = 200;
  int threads = 1;
  bool full_scale = false;
  std::string out_dir;
};

struct BenchLaggedOptions {
  std::string data = "data/LAozone.data";
  bool synthetic = false;
  bool fetch = false;
  Eigen::Index lag = 0;   // 0: 20 for real data, 5 for the stand-in
  Eigen::Index train = 0; // 0: 155 for real data, 10 for the stand-in
  int lambda_count = 100;
  std::string q_list = "0.3,0.5,1";
  std::uint64_t x0_seed = 1;
  double tol = 1e-6;
  long maxiters = 100000;
  int threads = 1;
  std::string out_dir;
};

int cmd_solve(const SolveOptions& opt, const std::string& command_line);
int cmd_diag(const DiagOptions& opt, const std::string& command_line);
int cmd_bench_cs(const BenchCsOptions& opt, const std::string& command_line);
int cmd_bench_lagged(const BenchLaggedOptions& opt,
                     const std::string& command_line);

/// Downloads the ozone data file into out_path. Returns false and fills
/// error when the transfer fails (for example with no network access).
bool fetch_laozone(const std::string& out_path, std::string* error);

}  // namespace ordsparse::cli

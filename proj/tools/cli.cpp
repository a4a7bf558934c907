#include "cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "ordsparse/version.hpp"

namespace ordsparse::cli {

namespace {

void add_model_options(CLI::App* cmd, ModelOptions& model) {
  cmd->add_option("--alg", model.alg, "Solver: dma or npg")
      ->check(CLI::IsMember({"dma", "npg"}));
  cmd->add_option("--reg", model.reg, "Penalty family: l1, lp or log")
      ->check(CLI::IsMember({"l1", "lp", "log"}));
  cmd->add_option("--p", model.p, "Exponent for --reg lp");
  cmd->add_option("--eps", model.eps, "Offset for --reg log");
  cmd->add_option("--omega", model.omega,
                  "Constraint set: nonneg, isotone or block-isotone")
      ->check(CLI::IsMember({"nonneg", "isotone", "block-isotone"}));
  cmd->add_option("--block-len", model.block_len,
                  "Block length for --omega block-isotone");
  cmd->add_option("--lambda", model.lambda, "Penalty weight");
  cmd->add_option("--scale", model.scale,
                  "Scale of the quadratic data-fit term");
}

void print_error_json(const std::string& message, int code) {
  nlohmann::json j;
  j["error"] = message;
  j["code"] = code;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "ordsparse: sparsity-inducing regression under order constraints"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Solve one instance and write a trace");
  add_model_options(solve_cmd, solve.model);
  solve_cmd->add_option("--A", solve.a_path, "Design matrix (CSV or .bin)")
      ->required();
  solve_cmd->add_option("--b", solve.b_path, "Measurements (CSV or .bin)")
      ->required();
  solve_cmd->add_option("--x0", solve.x0,
                        "Initial point: zero | random:<seed> | file:<path>");
  solve_cmd->add_option("--tol", solve.solver.tol,
                        "Relative step tolerance (0 disables)");
  solve_cmd->add_option("--maxtime", solve.solver.maxtime,
                        "Wall-clock limit in seconds (0 disables)");
  solve_cmd->add_option("--maxiters", solve.solver.maxiters,
                        "Iteration cap");
  solve_cmd->add_option("--out", solve.out, "Trace CSV path");

  DiagOptions diag;
  CLI::App* diag_cmd = app.add_subcommand(
      "diag", "Stationarity certificate for a solution");
  diag_cmd->add_option("--problem", diag.problem_json,
                       "Problem sidecar JSON written by solve")
      ->required();
  diag_cmd->add_option("--x", diag.x_path, "Solution vector (CSV)")
      ->required();
  diag_cmd->add_option("--trace", diag.trace_path,
                       "Trace CSV; supplies the last accepted eta");
  diag_cmd->add_option("--eta", diag.eta, "Surrogate curvature to certify at");
  diag_cmd->add_option("--tol", diag.tol, "Tolerance for the report flags");
  diag_cmd->add_option("--out", diag.out, "Report path (default: stdout)");

  BenchCsOptions bench_cs;
  CLI::App* bench_cs_cmd = app.add_subcommand(
      "bench-cs", "Ordered compressed-sensing benchmark (six solvers)");
  bench_cs_cmd->add_option("--n", bench_cs.n, "Signal length");
  bench_cs_cmd->add_option("--m", bench_cs.m, "Measurement count");
  bench_cs_cmd->add_option("--s", bench_cs.s, "Nonzero count");
  bench_cs_cmd->add_option("--sigma", bench_cs.sigma, "Noise level");
  bench_cs_cmd->add_option("--seeds", bench_cs.seeds, "Number of instances");
  bench_cs_cmd->add_option("--seed", bench_cs.seed_base, "Base seed");
  bench_cs_cmd->add_option("--maxtime", bench_cs.maxtime,
                           "Per-solve wall-clock budget in seconds");
  bench_cs_cmd->add_option("--tol", bench_cs.tol,
                           "Relative step tolerance (0 disables)");
  bench_cs_cmd->add_option("--maxiters", bench_cs.maxiters, "Iteration cap");
  bench_cs_cmd->add_option("--lambda-lp", bench_cs.lambda_lp,
                           "Penalty weight for the power-penalty models");
  bench_cs_cmd->add_option("--lambda-log", bench_cs.lambda_log,
                           "Penalty weight for the log-penalty models");
  bench_cs_cmd->add_option("--p", bench_cs.p, "Power-penalty exponent");
  bench_cs_cmd->add_option("--eps", bench_cs.eps, "Log-penalty offset");
  bench_cs_cmd->add_option("--samples", bench_cs.samples,
                           "Time-grid samples for the averaged curves");
  bench_cs_cmd->add_option("--threads", bench_cs.threads,
                           "Worker threads across instances");
  bench_cs_cmd->add_flag("--full-scale", bench_cs.full_scale,
                         "Allow triples beyond the desk-scale budget");
  bench_cs_cmd->add_option("--out-dir", bench_cs.out_dir, "Output directory")
      ->required();

  BenchLaggedOptions bench_lagged;
  CLI::App* bench_lagged_cmd = app.add_subcommand(
      "bench-lagged", "Time-lagged regression benchmark with a lambda sweep");
  bench_lagged_cmd->add_option("--data", bench_lagged.data,
                               "Ozone data file (CSV with header)");
  bench_lagged_cmd->add_flag("--synthetic", bench_lagged.synthetic,
                             "Use the deterministic offline stand-in");
  bench_lagged_cmd->add_flag("--fetch", bench_lagged.fetch,
                             "Download the data file if missing");
  bench_lagged_cmd->add_option("--lag", bench_lagged.lag, "Maximum time lag");
  bench_lagged_cmd->add_option("--train", bench_lagged.train,
                               "Training observations");
  bench_lagged_cmd->add_option("--lambda-count", bench_lagged.lambda_count,
                               "Points on the lambda sweep");
  bench_lagged_cmd->add_option("--q-list", bench_lagged.q_list,
                               "Comma-separated exponents, e.g. 0.3,0.5,1");
  bench_lagged_cmd->add_option("--x0-seed", bench_lagged.x0_seed,
                               "Seed of the shared random initial point");
  bench_lagged_cmd->add_option("--tol", bench_lagged.tol,
                               "Relative step tolerance");
  bench_lagged_cmd->add_option("--maxiters", bench_lagged.maxiters,
                               "Iteration cap");
  bench_lagged_cmd->add_option("--threads", bench_lagged.threads,
                               "Worker threads across lambdas");
  bench_lagged_cmd
      ->add_option("--out-dir", bench_lagged.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    print_error_json(e.what(), kExitConfig);
    return kExitConfig;
  }

  const std::string command_line = join_command_line(argc, argv);
  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, command_line);
    if (diag_cmd->parsed()) return cmd_diag(diag, command_line);
    if (bench_cs_cmd->parsed()) return cmd_bench_cs(bench_cs, command_line);
    if (bench_lagged_cmd->parsed()) {
      return cmd_bench_lagged(bench_lagged, command_line);
    }
  } catch (const SolverFault& e) {
    print_error_json(e.what(), kExitSolverFault);
    return kExitSolverFault;
  } catch (const std::exception& e) {
    print_error_json(e.what(), kExitConfig);
    return kExitConfig;
  }
  print_error_json("no subcommand given", kExitConfig);
  return kExitConfig;
}

}  // namespace ordsparse::cli

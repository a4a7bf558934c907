#include <chrono>

#include "commands.hpp"
#include "ordsparse/diagnostics.hpp"

namespace ordsparse::cli {

int cmd_solve(const SolveOptions& opt, const std::string& command_line) {
  const auto t0 = std::chrono::steady_clock::now();

  const Eigen::MatrixXd A = load_matrix(opt.a_path);
  const Eigen::VectorXd b = load_vector(opt.b_path);
  if (A.rows() != b.size()) {
    throw ConfigError("--A and --b dimensions disagree");
  }
  if (!(opt.model.lambda > 0.0)) {
    throw ConfigError("--lambda must be positive");
  }

  const ConstraintSet cs = make_constraint(opt.model, A.cols());
  const Eigen::VectorXd x0 = resolve_x0(opt.x0, cs);
  const SolverConfig config = make_solver_config(opt.solver);
  LeastSquares smooth(A, b, opt.model.scale);

  RunResult result;
  Problem problem(smooth, make_regularizer(opt.model), opt.model.lambda, cs);
  if (opt.model.alg == "dma") {
    result = dma_solve(problem, config, x0);
  } else if (opt.model.alg == "npg") {
    result = npg_solve(smooth, make_prox_spec(opt.model, A.cols()), config, x0);
  } else {
    throw ConfigError("unknown --alg '" + opt.model.alg +
                      "' (expected dma|npg)");
  }

  const std::string x_path = sibling_path(opt.out, "_x.csv");
  const std::string problem_path = sibling_path(opt.out, "_problem.json");
  const std::string manifest_path = sibling_path(opt.out, "_manifest.json");

  write_trace_csv(opt.out, result);
  write_vector_csv(x_path, result.x);
  save_problem(problem_path, problem);

  RunManifest manifest;
  manifest.command_line = command_line;
  manifest.config["alg"] = opt.model.alg;
  manifest.config["reg"] = opt.model.reg;
  manifest.config["p"] = opt.model.p;
  manifest.config["eps"] = opt.model.eps;
  manifest.config["omega"] = opt.model.omega;
  manifest.config["lambda"] = opt.model.lambda;
  manifest.config["scale"] = opt.model.scale;
  manifest.config["x0"] = opt.x0;
  manifest.config["tol"] = opt.solver.tol;
  manifest.config["maxtime"] = opt.solver.maxtime;
  manifest.config["maxiters"] = opt.solver.maxiters;
  manifest.config["iterations"] = result.records.back().k;
  manifest.config["final_objective"] = result.records.back().objective;
  switch (result.reason) {
    case StopReason::StepTolerance:
      manifest.config["stop_reason"] = "step_tolerance";
      break;
    case StopReason::MaxIterations:
      manifest.config["stop_reason"] = "max_iterations";
      break;
    case StopReason::TimeLimit:
      manifest.config["stop_reason"] = "time_limit";
      break;
  }
  manifest.timing_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  manifest.outputs = {opt.out, x_path, problem_path};
  write_manifest(manifest_path, manifest);
  return kExitOk;
}

}  // namespace ordsparse::cli

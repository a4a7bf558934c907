#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "ordsparse/diagnostics.hpp"

namespace ordsparse::cli {

int cmd_diag(const DiagOptions& opt, const std::string& command_line) {
  const Problem problem = load_problem(opt.problem_json);
  const Eigen::VectorXd x = load_vector(opt.x_path);
  if (x.size() != problem.dim()) {
    throw ConfigError("--x dimension does not match the problem");
  }
  if (!problem.feasible(x)) {
    throw ConfigError("--x is infeasible: |x| must satisfy the constraint set");
  }

  double eta = opt.eta;
  if (eta <= 0.0 && !opt.trace_path.empty()) {
    const auto records = read_trace_csv(opt.trace_path);
    if (!records.empty() && records.back().eta > 0.0) {
      eta = records.back().eta;
    }
  }
  if (eta <= 0.0) eta = 1.0;

  StationarityReport report = psi_opt_residual(problem, x, eta);
  if (problem.constraint().kind() == ConstraintKind::NonnegOrthant) {
    report.coord_checks = check_unconstrained_stationarity(problem, x, opt.tol);
  }

  nlohmann::json j;
  j["command_line"] = command_line;
  j["eta"] = report.eta_used;
  j["residual"] = report.residual;
  j["alpha"] = std::vector<double>(report.alpha.data(),
                                   report.alpha.data() + report.alpha.size());
  j["tol"] = opt.tol;
  j["residual_within_tol"] = report.residual <= opt.tol;

  if (!report.coord_checks.empty()) {
    nlohmann::json flags = nlohmann::json::array();
    bool all_ok = true;
    for (const CoordCheck check : report.coord_checks) {
      switch (check) {
        case CoordCheck::Pass:
          flags.push_back("pass");
          break;
        case CoordCheck::Fail:
          flags.push_back("fail");
          all_ok = false;
          break;
        case CoordCheck::VacuousZero:
          flags.push_back("vacuous-zero");
          break;
      }
    }
    j["unconstrained"]["flags"] = flags;
    j["unconstrained"]["all_pass"] = all_ok;
  }

  if (opt.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write report: " + opt.out);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace ordsparse::cli

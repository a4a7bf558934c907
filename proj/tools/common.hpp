#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ordsparse/io.hpp"
#include "ordsparse/npg.hpp"
#include "ordsparse/problem.hpp"
#include "ordsparse/solver.hpp"

namespace ordsparse::cli {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolverFault = 3;

/// Raised for configuration problems detected after argument parsing; maps
/// to exit code 2 with a machine-readable message on stderr.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Shared solver/model flags.
struct ModelOptions {
  std::string alg = "dma";
  std::string reg = "lp";
  double p = 0.5;
  double eps = 0.5;
  std::string omega = "isotone";
  Eigen::Index block_len = 0;
  double lambda = 5e-2;
  double scale = 1.0;
};

struct SolverOptions {
  double tol = 1e-6;
  double maxtime = 0.0;  // 0 disables the time limit
  long maxiters = 100000;
};

Regularizer make_regularizer(const ModelOptions& opt);
ConstraintSet make_constraint(const ModelOptions& opt, Eigen::Index dim);
SolverConfig make_solver_config(const SolverOptions& opt);

/// NPG variant from the --reg/--omega combination; throws ConfigError for
/// combinations with no proximal map.
ProxSpec make_prox_spec(const ModelOptions& opt, Eigen::Index dim);

/// Reads a matrix by extension (.bin or CSV).
Eigen::MatrixXd load_matrix(const std::string& path);
Eigen::VectorXd load_vector(const std::string& path);

/// Resolves an --x0 argument: "zero", "random:<seed>" (ordered to match the
/// constraint kind), or "file:<path>".
Eigen::VectorXd resolve_x0(const std::string& spec, const ConstraintSet& cs);

/// Run manifest: every referenced output file must exist; each is recorded
/// with size and checksum.
struct RunManifest {
  std::string command_line;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  double timing_s = 0.0;
  std::vector<std::string> outputs;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

std::string join_command_line(int argc, const char* const* argv);

/// Derives sibling output paths from the trace path: <stem>_x.csv,
/// <stem>_problem.json, <stem>_manifest.json.
std::string sibling_path(const std::string& out, const std::string& suffix);

}  // namespace ordsparse::cli

#include "common.hpp"

#include <filesystem>
#include <fstream>

#include "ordsparse/experiment.hpp"
#include "ordsparse/version.hpp"

namespace ordsparse::cli {

Regularizer make_regularizer(const ModelOptions& opt) {
  if (opt.reg == "l1") return Regularizer::linear();
  if (opt.reg == "lp") {
    if (!(opt.p > 0.0 && opt.p <= 0.5)) {
      throw ConfigError(
          "--p must lie in (0, 0.5] for the reparametrized solver; larger "
          "exponents have no convex inverse with the required smoothness");
    }
    return Regularizer::lp(opt.p);
  }
  if (opt.reg == "log") return Regularizer::log_pen(opt.eps);
  throw ConfigError("unknown --reg '" + opt.reg + "' (expected l1|lp|log)");
}

ConstraintSet make_constraint(const ModelOptions& opt, Eigen::Index dim) {
  if (opt.omega == "nonneg") return ConstraintSet::nonneg_orthant(dim);
  if (opt.omega == "isotone") return ConstraintSet::isotone_nonneg(dim);
  if (opt.omega == "block-isotone") {
    if (opt.block_len <= 0) {
      throw ConfigError("--block-len is required with --omega block-isotone");
    }
    if (dim % opt.block_len != 0) {
      throw ConfigError("--block-len must divide the problem dimension");
    }
    return ConstraintSet::block_isotone(dim, opt.block_len);
  }
  throw ConfigError("unknown --omega '" + opt.omega +
                    "' (expected nonneg|isotone|block-isotone)");
}

SolverConfig make_solver_config(const SolverOptions& opt) {
  SolverConfig config;
  config.tol_step = opt.tol;
  config.max_iters = opt.maxiters;
  if (opt.maxtime > 0.0) config.max_time_s = opt.maxtime;
  config.validate();
  return config;
}

ProxSpec make_prox_spec(const ModelOptions& opt, Eigen::Index dim) {
  const bool ordered = opt.omega == "isotone" || opt.omega == "block-isotone";
  if (opt.reg == "l1") {
    if (ordered) {
      return ProxSpec::l1_isotone(opt.lambda, make_constraint(opt, dim));
    }
    return ProxSpec::l1(opt.lambda);
  }
  if (ordered) {
    throw ConfigError(
        "no proximal-gradient variant exists for --reg " + opt.reg +
        " with an order constraint; use --alg dma for that model");
  }
  if (opt.reg == "lp") {
    if (!(opt.p > 0.0 && opt.p < 1.0)) {
      throw ConfigError("--p must lie in (0, 1) for the proximal baseline");
    }
    return ProxSpec::lp_power(opt.lambda, opt.p);
  }
  if (opt.reg == "log") return ProxSpec::log_pen(opt.lambda, opt.eps);
  throw ConfigError("unknown --reg '" + opt.reg + "' (expected l1|lp|log)");
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("input file not found: " + path);
  }
  if (std::filesystem::path(path).extension() == ".bin") {
    return read_matrix_bin(path);
  }
  return read_matrix_csv(path);
}

Eigen::VectorXd load_vector(const std::string& path) {
  const Eigen::MatrixXd m = load_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ConfigError("expected a vector in " + path);
}

Eigen::VectorXd resolve_x0(const std::string& spec, const ConstraintSet& cs) {
  if (spec == "zero") return Eigen::VectorXd::Zero(cs.dim());
  if (spec.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::stoull(spec.substr(7));
    switch (cs.kind()) {
      case ConstraintKind::BlockIsotoneNonneg:
        return block_ordered_gaussian(cs.dim(), cs.block_len(), seed);
      case ConstraintKind::IsotoneNonneg:
        return ordered_gaussian(cs.dim(), seed);
      case ConstraintKind::NonnegOrthant: {
        GaussianSampler g(seed);
        Eigen::VectorXd x(cs.dim());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = g.next();
        return x;
      }
    }
  }
  if (spec.rfind("file:", 0) == 0) {
    const Eigen::VectorXd x0 = load_vector(spec.substr(5));
    if (x0.size() != cs.dim()) {
      throw ConfigError("--x0 file has the wrong dimension");
    }
    if (!cs.contains(x0.cwiseAbs())) {
      throw ConfigError("--x0 file is infeasible: |x0| must satisfy the "
                        "constraint set");
    }
    return x0;
  }
  throw ConfigError("bad --x0 '" + spec +
                    "' (expected zero|random:<seed>|file:<path>)");
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["command_line"] = manifest.command_line;
  j["version"] = kVersion;
  j["config"] = manifest.config;
  j["seeds"] = manifest.seeds;
  j["timing_s"] = manifest.timing_s;
  j["outputs"] = nlohmann::json::array();
  for (const std::string& file : manifest.outputs) {
    if (!std::filesystem::exists(file)) {
      throw std::runtime_error("manifest references a missing output: " +
                               file);
    }
    nlohmann::json entry;
    entry["path"] = file;
    entry["bytes"] = std::filesystem::file_size(file);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(file)));
    entry["fnv1a"] = std::string(hex);
    j["outputs"].push_back(entry);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
}

std::string join_command_line(int argc, const char* const* argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const std::filesystem::path p(out);
  std::filesystem::path dir = p.parent_path();
  const std::string name = p.stem().string() + suffix;
  return dir.empty() ? name : (dir / name).string();
}

}  // namespace ordsparse::cli

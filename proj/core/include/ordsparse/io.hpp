#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "ordsparse/experiment.hpp"
#include "ordsparse/problem.hpp"
#include "ordsparse/solver.hpp"

namespace ordsparse {

// Plain CSV of doubles, no header.
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::VectorXd read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);

// Row-major binary: two little-endian int64 dims, then rows*cols doubles.
Eigen::MatrixXd read_matrix_bin(const std::string& path);
void write_matrix_bin(const std::string& path, const Eigen::MatrixXd& m);

// CSV with a header row of column names.
DataTable read_table_csv(const std::string& path);
void write_table_csv(const std::string& path, const DataTable& table);

// Solver trace: header "k,F,gamma,eta,step_norm,time_s", one row per iterate.
void write_trace_csv(const std::string& path, const RunResult& result);
std::vector<IterRecord> read_trace_csv(const std::string& path);

/// Problem container: a JSON sidecar holding the scalars plus file
/// references for A and b (CSV or the binary format above, by extension).
void save_problem(const std::string& json_path, const Problem& problem,
                  bool binary = false);
Problem load_problem(const std::string& json_path);

/// FNV-1a 64-bit checksum of a file's bytes, for run manifests.
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace ordsparse

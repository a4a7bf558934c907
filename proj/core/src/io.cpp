#include "ordsparse/io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ordsparse {

namespace {

std::ifstream open_in(const std::string& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::vector<double> parse_csv_row(const std::string& line,
                                  const std::string& path) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::runtime_error("malformed number '" + cell + "' in " + path);
    }
  }
  return row;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows,
                               const std::string& path) {
  if (rows.empty()) throw std::runtime_error("empty table in " + path);
  const size_t cols = rows[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw std::runtime_error("ragged rows in " + path);
    }
    for (size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::in);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_csv_row(line, path));
  }
  return rows_to_matrix(rows, path);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_out(path, std::ios::out);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw std::runtime_error("expected a single row or column in " + path);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  write_matrix_csv(path, v);
}

Eigen::MatrixXd read_matrix_bin(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!in || rows < 0 || cols < 0) {
    throw std::runtime_error("malformed binary matrix header in " + path);
  }
  Eigen::MatrixXd m(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      double value = 0.0;
      in.read(reinterpret_cast<char*>(&value), sizeof(value));
      m(i, j) = value;
    }
  }
  if (!in) throw std::runtime_error("truncated binary matrix in " + path);
  return m;
}

void write_matrix_bin(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
  const std::int64_t rows = m.rows();
  const std::int64_t cols = m.cols();
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      const double value = m(i, j);
      out.write(reinterpret_cast<const char*>(&value), sizeof(value));
    }
  }
}

DataTable read_table_csv(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty table file: " + path);
  }
  DataTable table;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_csv_row(line, path));
  }
  table.values = rows_to_matrix(rows, path);
  if (table.values.cols() != static_cast<Eigen::Index>(table.columns.size())) {
    throw std::runtime_error("header/data column mismatch in " + path);
  }
  return table;
}

void write_table_csv(const std::string& path, const DataTable& table) {
  std::ofstream out = open_out(path, std::ios::out);
  out << std::setprecision(17);
  for (size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out << ',';
    out << table.columns[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      if (j) out << ',';
      out << table.values(i, j);
    }
    out << '\n';
  }
}

void write_trace_csv(const std::string& path, const RunResult& result) {
  std::ofstream out = open_out(path, std::ios::out);
  out << std::setprecision(17);
  out << "k,F,gamma,eta,step_norm,time_s\n";
  for (const IterRecord& rec : result.records) {
    out << rec.k << ',' << rec.objective << ',' << rec.gamma << ',' << rec.eta
        << ',' << rec.step_norm << ',' << rec.time_s << '\n';
  }
}

std::vector<IterRecord> read_trace_csv(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,F,gamma", 0) != 0) {
    throw std::runtime_error("not a trace file: " + path);
  }
  std::vector<IterRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> row = parse_csv_row(line, path);
    if (row.size() != 6) throw std::runtime_error("malformed trace row in " + path);
    IterRecord rec;
    rec.k = static_cast<long>(row[0]);
    rec.objective = row[1];
    rec.gamma = row[2];
    rec.eta = row[3];
    rec.step_norm = row[4];
    rec.time_s = row[5];
    records.push_back(rec);
  }
  return records;
}

namespace {

std::string family_name(PenaltyFamily family) {
  switch (family) {
    case PenaltyFamily::Linear:
      return "l1";
    case PenaltyFamily::Lp:
      return "lp";
    case PenaltyFamily::Log:
      return "log";
  }
  return "l1";
}

std::string kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::NonnegOrthant:
      return "nonneg";
    case ConstraintKind::IsotoneNonneg:
      return "isotone";
    case ConstraintKind::BlockIsotoneNonneg:
      return "block-isotone";
  }
  return "nonneg";
}

}  // namespace

void save_problem(const std::string& json_path, const Problem& problem,
                  bool binary) {
  namespace fs = std::filesystem;
  const fs::path jp(json_path);
  const std::string stem = jp.stem().string();
  const fs::path dir = jp.has_parent_path() ? jp.parent_path() : fs::path(".");
  const std::string ext = binary ? ".bin" : ".csv";
  const std::string a_name = stem + "_A" + ext;
  const std::string b_name = stem + "_b" + ext;

  if (binary) {
    write_matrix_bin((dir / a_name).string(), problem.smooth().A());
    write_matrix_bin((dir / b_name).string(), problem.smooth().b());
  } else {
    write_matrix_csv((dir / a_name).string(), problem.smooth().A());
    write_vector_csv((dir / b_name).string(), problem.smooth().b());
  }

  nlohmann::json j;
  j["A"] = a_name;
  j["b"] = b_name;
  j["scale"] = problem.smooth().scale();
  j["lambda"] = problem.lambda();
  j["reg"]["family"] = family_name(problem.reg().family());
  if (problem.reg().family() == PenaltyFamily::Lp) {
    j["reg"]["p"] = problem.reg().p();
  }
  if (problem.reg().family() == PenaltyFamily::Log) {
    j["reg"]["eps"] = problem.reg().eps();
  }
  j["omega"]["kind"] = kind_name(problem.constraint().kind());
  if (problem.constraint().kind() == ConstraintKind::BlockIsotoneNonneg) {
    j["omega"]["block_len"] = problem.constraint().block_len();
  }

  std::ofstream out = open_out(json_path, std::ios::out);
  out << j.dump(2) << '\n';
}

Problem load_problem(const std::string& json_path) {
  namespace fs = std::filesystem;
  std::ifstream in = open_in(json_path, std::ios::in);
  nlohmann::json j;
  in >> j;

  const fs::path dir = fs::path(json_path).has_parent_path()
                           ? fs::path(json_path).parent_path()
                           : fs::path(".");
  auto resolve = [&](const std::string& name) {
    fs::path p(name);
    return p.is_absolute() ? p.string() : (dir / p).string();
  };
  auto load_any = [&](const std::string& name) {
    const std::string full = resolve(name);
    if (fs::path(name).extension() == ".bin") return read_matrix_bin(full);
    return read_matrix_csv(full);
  };

  const Eigen::MatrixXd A = load_any(j.at("A").get<std::string>());
  const Eigen::MatrixXd b_mat = load_any(j.at("b").get<std::string>());
  Eigen::VectorXd b;
  if (b_mat.cols() == 1) {
    b = b_mat.col(0);
  } else if (b_mat.rows() == 1) {
    b = b_mat.row(0).transpose();
  } else {
    throw std::runtime_error("load_problem: b must be a vector");
  }

  const double scale = j.value("scale", 1.0);
  const double lambda = j.at("lambda").get<double>();

  const std::string family = j.at("reg").at("family").get<std::string>();
  Regularizer reg = Regularizer::linear();
  if (family == "lp") {
    reg = Regularizer::lp(j.at("reg").at("p").get<double>());
  } else if (family == "log") {
    reg = Regularizer::log_pen(j.at("reg").at("eps").get<double>());
  } else if (family != "l1") {
    throw std::runtime_error("load_problem: unknown family " + family);
  }

  const std::string kind = j.at("omega").at("kind").get<std::string>();
  const Eigen::Index n = A.cols();
  ConstraintSet cs = ConstraintSet::nonneg_orthant(n);
  if (kind == "isotone") {
    cs = ConstraintSet::isotone_nonneg(n);
  } else if (kind == "block-isotone") {
    cs = ConstraintSet::block_isotone(
        n, j.at("omega").at("block_len").get<Eigen::Index>());
  } else if (kind != "nonneg") {
    throw std::runtime_error("load_problem: unknown constraint kind " + kind);
  }

  return Problem(LeastSquares(A, b, scale), reg, lambda, cs);
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  std::uint64_t hash = 14695981039346656037ULL;
  char buffer[4096];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ULL;
    }
    if (!in) break;
  }
  return hash;
}

}  // namespace ordsparse

#include "ordsparse/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace ordsparse {
namespace {

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ordsparse_io_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::filesystem::path dir_;
};

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal(0.0, 3.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

TEST_F(IoTest, MatrixCsvRoundTrip) {
  const Eigen::MatrixXd m = random_matrix(7, 4);
  write_matrix_csv(path("m.csv"), m);
  EXPECT_EQ(read_matrix_csv(path("m.csv")), m);
  EXPECT_THROW(read_matrix_csv(path("missing.csv")), std::runtime_error);
}

TEST_F(IoTest, MatrixBinRoundTrip) {
  const Eigen::MatrixXd m = random_matrix(5, 9);
  write_matrix_bin(path("m.bin"), m);
  EXPECT_EQ(read_matrix_bin(path("m.bin")), m);

  std::ofstream bad(path("bad.bin"), std::ios::binary);
  bad << "xx";
  bad.close();
  EXPECT_THROW(read_matrix_bin(path("bad.bin")), std::runtime_error);
}

TEST_F(IoTest, VectorReadsRowOrColumn) {
  const Eigen::VectorXd v = random_matrix(6, 1).col(0);
  write_vector_csv(path("v.csv"), v);
  EXPECT_EQ(read_vector_csv(path("v.csv")), v);

  write_matrix_csv(path("row.csv"), v.transpose());
  EXPECT_EQ(read_vector_csv(path("row.csv")), v);

  write_matrix_csv(path("wide.csv"), random_matrix(3, 3));
  EXPECT_THROW(read_vector_csv(path("wide.csv")), std::runtime_error);
}

TEST_F(IoTest, TableRoundTrip) {
  DataTable table;
  table.columns = {"a", "b", "c"};
  table.values = random_matrix(4, 3);
  write_table_csv(path("t.csv"), table);
  const DataTable back = read_table_csv(path("t.csv"));
  EXPECT_EQ(back.columns, table.columns);
  EXPECT_EQ(back.values, table.values);
}

TEST_F(IoTest, TraceRoundTrip) {
  RunResult result;
  for (long k = 0; k < 5; ++k) {
    IterRecord rec;
    rec.k = k;
    rec.objective = 10.0 / double(k + 1);
    rec.gamma = 0.5 * double(k);
    rec.eta = double(k);
    rec.step_norm = 1.0 / double(k + 1);
    rec.time_s = 0.125 * double(k + 1);
    result.records.push_back(rec);
  }
  write_trace_csv(path("trace.csv"), result);
  const auto back = read_trace_csv(path("trace.csv"));
  ASSERT_EQ(back.size(), result.records.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].k, result.records[i].k);
    EXPECT_EQ(back[i].objective, result.records[i].objective);
    EXPECT_EQ(back[i].gamma, result.records[i].gamma);
    EXPECT_EQ(back[i].eta, result.records[i].eta);
    EXPECT_EQ(back[i].step_norm, result.records[i].step_norm);
    EXPECT_EQ(back[i].time_s, result.records[i].time_s);
  }

  std::ofstream junk(path("junk.csv"));
  junk << "nope\n";
  junk.close();
  EXPECT_THROW(read_trace_csv(path("junk.csv")), std::runtime_error);
}

TEST_F(IoTest, ProblemSidecarRoundTrip) {
  const Eigen::MatrixXd A = random_matrix(6, 4);
  const Eigen::VectorXd b = random_matrix(6, 1).col(0);
  for (const bool binary : {false, true}) {
    Problem pb(LeastSquares(A, b, 0.25), Regularizer::lp(0.5), 5e-2,
               ConstraintSet::block_isotone(4, 2));
    const std::string jp = path(binary ? "pb_bin.json" : "pb_csv.json");
    save_problem(jp, pb, binary);
    const Problem back = load_problem(jp);
    EXPECT_EQ(back.smooth().A(), A);
    EXPECT_EQ(back.smooth().b(), b);
    EXPECT_DOUBLE_EQ(back.smooth().scale(), 0.25);
    EXPECT_DOUBLE_EQ(back.lambda(), 5e-2);
    EXPECT_EQ(back.reg().family(), PenaltyFamily::Lp);
    EXPECT_DOUBLE_EQ(back.reg().p(), 0.5);
    EXPECT_EQ(back.constraint().kind(), ConstraintKind::BlockIsotoneNonneg);
    EXPECT_EQ(back.constraint().block_len(), 2);
  }
}

TEST_F(IoTest, ChecksumTracksContent) {
  {
    std::ofstream out(path("x.txt"), std::ios::binary);
    out << "abc";
  }
  // FNV-1a of "abc".
  EXPECT_EQ(fnv1a_file(path("x.txt")), 0xe71fa2190541574bULL);
  {
    std::ofstream out(path("y.txt"), std::ios::binary);
    out << "abd";
  }
  EXPECT_NE(fnv1a_file(path("x.txt")), fnv1a_file(path("y.txt")));
}

}  // namespace
}  // namespace ordsparse

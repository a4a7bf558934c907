#include "cli.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "ordsparse/experiment.hpp"
#include "ordsparse/io.hpp"

namespace ordsparse {
namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("ordsparse");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ordsparse_cli_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);

    const CsInstance inst = gen_cs_instance(24, 12, 4, 0.05, 11);
    write_matrix_csv(path("A.csv"), inst.A);
    write_vector_csv(path("b.csv"), inst.b);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, SolveWritesAllArtifacts) {
  const int code = run({"solve", "--alg", "dma", "--reg", "lp", "--p", "0.5",
                        "--omega", "isotone", "--lambda", "0.05", "--A",
                        path("A.csv"), "--b", path("b.csv"), "--x0",
                        "random:3", "--tol", "1e-6", "--out",
                        path("run.csv")});
  EXPECT_EQ(code, 0);
  EXPECT_TRUE(std::filesystem::exists(path("run.csv")));
  EXPECT_TRUE(std::filesystem::exists(path("run_x.csv")));
  EXPECT_TRUE(std::filesystem::exists(path("run_problem.json")));
  EXPECT_TRUE(std::filesystem::exists(path("run_manifest.json")));

  const auto records = read_trace_csv(path("run.csv"));
  ASSERT_GE(records.size(), 2u);
  EXPECT_EQ(records.front().k, 0);

  // Manifest checksums refer to real files.
  std::ifstream in(path("run_manifest.json"));
  nlohmann::json manifest;
  in >> manifest;
  for (const auto& entry : manifest.at("outputs")) {
    EXPECT_TRUE(
        std::filesystem::exists(entry.at("path").get<std::string>()));
    EXPECT_EQ(entry.at("fnv1a").get<std::string>().size(), 16u);
  }

  // The sidecar reloads into a solvable problem.
  const Problem pb = load_problem(path("run_problem.json"));
  EXPECT_EQ(pb.dim(), 24);

  // Diagnostics over the written artifacts.
  const int diag_code =
      run({"diag", "--problem", path("run_problem.json"), "--x",
           path("run_x.csv"), "--trace", path("run.csv"), "--out",
           path("report.json")});
  EXPECT_EQ(diag_code, 0);
  std::ifstream rin(path("report.json"));
  nlohmann::json report;
  rin >> report;
  EXPECT_GE(report.at("residual").get<double>(), 0.0);
  EXPECT_GT(report.at("eta").get<double>(), 0.0);
}

TEST_F(CliTest, SolveNpgVariants) {
  EXPECT_EQ(run({"solve", "--alg", "npg", "--reg", "l1", "--omega", "isotone",
                 "--lambda", "0.05", "--A", path("A.csv"), "--b",
                 path("b.csv"), "--out", path("npg.csv")}),
            0);
  // No proximal map for a nonconvex penalty under order constraints.
  EXPECT_EQ(run({"solve", "--alg", "npg", "--reg", "lp", "--p", "0.5",
                 "--omega", "isotone", "--lambda", "0.05", "--A",
                 path("A.csv"), "--b", path("b.csv"), "--out",
                 path("bad.csv")}),
            2);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  // Exponent outside the reparametrized solver's domain.
  EXPECT_EQ(run({"solve", "--alg", "dma", "--reg", "lp", "--p", "0.9",
                 "--omega", "isotone", "--lambda", "0.05", "--A",
                 path("A.csv"), "--b", path("b.csv"), "--out",
                 path("x.csv")}),
            2);
  // Unknown flag.
  EXPECT_EQ(run({"solve", "--bogus"}), 2);
  // Missing required inputs.
  EXPECT_EQ(run({"solve", "--alg", "dma"}), 2);
  // Missing file.
  EXPECT_EQ(run({"solve", "--A", path("A.csv"), "--b", path("nope.csv"),
                 "--out", path("x.csv")}),
            2);
  // No subcommand.
  EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, InfeasibleStartExitsTwo) {
  Eigen::VectorXd increasing(24);
  for (Eigen::Index i = 0; i < 24; ++i) increasing[i] = double(i);
  write_vector_csv(path("x0.csv"), increasing);
  EXPECT_EQ(run({"solve", "--alg", "dma", "--reg", "lp", "--p", "0.5",
                 "--omega", "isotone", "--lambda", "0.05", "--A",
                 path("A.csv"), "--b", path("b.csv"), "--x0",
                 "file:" + path("x0.csv"), "--out", path("run.csv")}),
            2);
}

TEST_F(CliTest, BenchCsSmallRun) {
  const std::string out_dir = path("bench");
  EXPECT_EQ(run({"bench-cs", "--n", "32", "--m", "16", "--s", "4", "--seeds",
                 "2", "--maxtime", "0.05", "--tol", "1e-5", "--samples",
                 "50", "--out-dir", out_dir}),
            0);
  const DataTable curves =
      read_table_csv((std::filesystem::path(out_dir) / "error_curves.csv")
                         .string());
  EXPECT_EQ(curves.values.rows(), 50);
  EXPECT_EQ(curves.columns.size(), 7u);  // t plus six algorithms
  EXPECT_EQ(curves.columns[0], "t");

  std::ifstream in(
      (std::filesystem::path(out_dir) / "manifest.json").string());
  nlohmann::json manifest;
  in >> manifest;
  EXPECT_EQ(manifest.at("seeds").size(), 2u);
}

TEST_F(CliTest, BenchCsDeskTripleFinishesQuickly) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string out_dir = path("desk");
  EXPECT_EQ(run({"bench-cs", "--n", "256", "--m", "54", "--s", "18",
                 "--seeds", "10", "--maxtime", "0.5", "--tol", "1e-6",
                 "--out-dir", out_dir}),
            0);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  EXPECT_LT(elapsed, 60.0);

  const DataTable curves =
      read_table_csv((std::filesystem::path(out_dir) / "error_curves.csv")
                         .string());
  EXPECT_EQ(curves.values.rows(), 200);     // default grid
  EXPECT_EQ(curves.columns.size(), 7u);     // six algorithm curves
  std::ifstream in(
      (std::filesystem::path(out_dir) / "manifest.json").string());
  nlohmann::json manifest;
  in >> manifest;
  EXPECT_EQ(manifest.at("seeds").size(), 10u);
}

TEST_F(CliTest, BenchCsRefusesFullScaleWithoutFlag) {
  EXPECT_EQ(run({"bench-cs", "--n", "25600", "--m", "5400", "--s", "1800",
                 "--out-dir", path("big")}),
            2);
}

TEST_F(CliTest, BenchLaggedSyntheticAndMissingData) {
  const std::string out_dir = path("lagged");
  EXPECT_EQ(run({"bench-lagged", "--synthetic", "--lambda-count", "4",
                 "--q-list", "0.5,1", "--out-dir", out_dir}),
            0);
  for (const std::string name :
       {"sweep_q0.5.csv", "sweep_q1.csv", "predictions_q0.5.csv",
        "predictions_q1.csv", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(out_dir) / name))
        << name;
  }
  const DataTable sweep = read_table_csv(
      (std::filesystem::path(out_dir) / "sweep_q0.5.csv").string());
  EXPECT_EQ(sweep.values.rows(), 4);

  // Without --fetch, a missing data file is a configuration error.
  EXPECT_EQ(run({"bench-lagged", "--data", path("absent.data"), "--out-dir",
                 path("lagged2")}),
            2);
}

}  // namespace
}  // namespace ordsparse

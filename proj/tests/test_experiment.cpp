#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slt/errors.hpp"
#include "slt/experiment.hpp"
#include "slt/functional.hpp"

using slt::ExperimentConfig;

namespace {

ExperimentConfig converge_config() {
  ExperimentConfig c;
  c.eps_list = {0.1, 0.05, 0.02};
  c.n_paths = 50;
  c.n_steps = 512;
  c.seed = 3;
  return c;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream s;
  s << is.rdbuf();
  return s.str();
}

}  // namespace

TEST(Experiment, ConvergeRowsCarryOracle) {
  const auto res = slt::run_experiment(converge_config());
  ASSERT_EQ(res.rows.size(), 3u);
  for (const auto& r : res.rows) {
    ASSERT_TRUE(r.oracle.has_value());
    EXPECT_EQ(*r.oracle, slt::analytic_E_renorm2(*r.epsilon));
    EXPECT_DOUBLE_EQ(*r.dev_stderr, std::abs(*r.mean - *r.oracle) / *r.std_error);
    EXPECT_FALSE(r.wall_time_s.has_value());
  }
  EXPECT_EQ(res.diagnostics["cauchy"].size(), 2u);
}

TEST(Experiment, OracleEmptyWithoutClosedForm) {
  ExperimentConfig c = converge_config();
  c.k = 3;
  for (const auto& r : slt::run_experiment(c).rows) {
    EXPECT_FALSE(r.oracle.has_value());
    EXPECT_FALSE(r.dev_stderr.has_value());
  }
  c.k = 2;
  c.weight = slt::parse_weight_spec("jacobian:swirl");
  for (const auto& r : slt::run_experiment(c).rows) EXPECT_FALSE(r.oracle.has_value());
  c.weight = slt::parse_weight_spec("jacobian:scale2");
  for (const auto& r : slt::run_experiment(c).rows) {
    EXPECT_DOUBLE_EQ(*r.oracle, 0.25 * slt::analytic_E_renorm2(*r.epsilon));
  }
}

TEST(Experiment, BrickCheckRowsPerCoordinatePlusSummary) {
  ExperimentConfig c;
  c.subcommand = slt::Subcommand::kBrickCheck;
  c.weight = slt::parse_weight_spec("example31:30");
  c.n_paths = 500;
  const auto res = slt::run_experiment(c);
  ASSERT_EQ(res.rows.size(), 31u);
  for (int m = 0; m < 30; ++m) EXPECT_EQ(res.rows[m].k, m + 1);
  EXPECT_EQ(res.rows.back().k, 0);
  EXPECT_EQ(res.rows.back().label, "dudley");
  EXPECT_GT(*res.rows.back().mean, 0.0);
  EXPECT_TRUE(res.diagnostics["skeleton_in_brick"].get<bool>());
}

TEST(Experiment, OtherSubcommandsRun) {
  ExperimentConfig c = converge_config();
  c.subcommand = slt::Subcommand::kHilbert;
  c.weight = slt::parse_weight_spec("example31:20:dyadic:3");
  EXPECT_EQ(slt::run_experiment(c).rows.size(), 3u * 4u);

  c.subcommand = slt::Subcommand::kImageCheck;
  c.weight = slt::parse_weight_spec("jacobian:tanh");
  const auto img = slt::run_experiment(c);
  EXPECT_EQ(img.rows.size(), 3u);
  EXPECT_LE(img.diagnostics["image_residual_max"].get<double>(), 1e-10);

  c.subcommand = slt::Subcommand::kLemmaDelta;
  c.weight = slt::parse_weight_spec("jacobian:affine");
  c.eps_list = {0.1, 0.01};
  const auto lem = slt::run_experiment(c);
  ASSERT_EQ(lem.rows.size(), 4u);
  EXPECT_EQ(lem.rows[0].label, "bump");
  EXPECT_NEAR(*lem.rows[3].mean, 1.0, 1e-6);
}

TEST(Experiment, ExampleThirtyTwoBrickCheck) {
  ExperimentConfig c;
  c.subcommand = slt::Subcommand::kBrickCheck;
  c.weight = slt::parse_weight_spec("example32:200");
  c.n_paths = 200;
  const auto res = slt::run_experiment(c);
  EXPECT_EQ(res.rows.size(), 6u);
  EXPECT_EQ(res.diagnostics["basis"], "example32-kl");
}

TEST(Experiment, InvalidConfigIsRejected) {
  ExperimentConfig c = converge_config();
  c.eps_list = {0.1, 0.2};
  EXPECT_THROW(slt::run_experiment(c), slt::ConfigError);
}

TEST(Experiment, OversizedRunHitsBudget) {
  ExperimentConfig c = converge_config();
  c.weight = slt::parse_weight_spec("const:1");
  c.n_steps = 1 << 16;
  c.k = 3;
  // Budget guard fires before any path; surfaces as a ResourceError.
  EXPECT_THROW(slt::run_experiment(c), slt::ResourceError);
}

TEST(Experiment, CsvLayoutAndByteIdenticalFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "slt_experiment_test";
  std::filesystem::create_directories(dir);
  ExperimentConfig c = converge_config();
  std::string first_csv, first_json;
  for (int run = 0; run < 2; ++run) {
    c.output_path = (dir / ("run" + std::to_string(run) + ".csv")).string();
    slt::RunOptions o;
    o.execution = run == 0 ? slt::Execution::kSerial : slt::Execution::kParallel;
    slt::write_outputs(c, slt::run_experiment(c, o));
    if (run == 0) {
      first_csv = slurp(c.output_path);
      first_json = slurp(c.output_path + ".json");
    }
  }
  EXPECT_EQ(slurp(c.output_path), first_csv);

  std::stringstream s(first_csv);
  std::string header, row;
  std::getline(s, header);
  EXPECT_EQ(header, slt::kCsvHeader);
  std::getline(s, row);
  const auto cells = split_cells(row);
  ASSERT_EQ(cells.size(), 14u);
  EXPECT_EQ(cells[0], "converge");
  EXPECT_EQ(cells[2], "0.1");
  EXPECT_EQ(cells[10], "50");
  EXPECT_EQ(cells[13], "");
  EXPECT_NE(first_json.find("\"version\""), std::string::npos);
  EXPECT_NE(first_json.find("\"row_labels\""), std::string::npos);
}

TEST(Experiment, FormatDoubleRoundTrips) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456789.0}) EXPECT_EQ(std::stod(slt::format_double(v)), v);
  EXPECT_EQ(slt::format_double(0.5), "0.5");
}

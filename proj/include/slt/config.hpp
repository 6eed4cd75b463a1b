#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slt/path.hpp"

namespace slt {

enum class Subcommand { kConverge, kHilbert, kBrickCheck, kImageCheck, kLemmaDelta };

std::string to_string(Subcommand s);

/// Tagged weight choice. Text form (CLI --weight):
///   const:<c> | jacobian:<F> | example31:<N>[:gs|:dyadic][:<M coords>] | example32:<mc_samples>
/// example32 takes its grid from a config file, default five points.
struct WeightSpec {
  enum class Kind { kConstant, kJacobian, kExample31, kExample32 };

  Kind kind = Kind::kConstant;
  double constant = 1.0;
  std::string diffeo = "identity";
  int n = 50;
  std::string basis = "gs";
  int coords = 0;  // 0: min(N, 20)
  std::vector<Point2> grid;
  long mc_samples = 2000;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

struct ExperimentConfig {
  Subcommand subcommand = Subcommand::kConverge;
  int k = 2;
  std::vector<double> eps_list;
  long n_paths = 10000;
  int n_steps = 4096;
  std::uint64_t seed = 0;
  WeightSpec weight;
  std::string output_path = "results.csv";
  double resolution_ratio = 0.1;
  bool record_wall_time = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

WeightSpec parse_weight_spec(std::string_view text);
std::string format_weight_spec(const WeightSpec& spec);

/// Parses a JSON document whose keys mirror the CLI flags
/// (subcommand, k, eps, paths, steps, seed, weight, out, ...).
/// Throws ConfigError listing every violation found.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config_json(const nlohmann::json& doc);

nlohmann::json to_json(const ExperimentConfig& config);
std::string emit_config(const ExperimentConfig& config);

/// Semantic checks on an already-typed config; empty when valid.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Non-fatal notes, e.g. grid resolution relative to the smallest epsilon.
std::vector<std::string> config_warnings(const ExperimentConfig& config);

}  // namespace slt

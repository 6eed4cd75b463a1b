#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slt/config.hpp"
#include "slt/ensemble.hpp"

namespace slt {

/// One CSV line. Optional fields print as empty cells.
///
/// Column meaning per subcommand:
///   converge, image-check  one row per epsilon; moments of the renormalized functional.
///   hilbert                per epsilon, one row per coordinate, then a row for the
///                          squared norm over the kept coordinates.
///   brick-check            one row per coordinate: k = coordinate index, epsilon = brick
///                          width, mean = width^2; then a summary row with k = 0 and
///                          mean = Dudley estimate.
///   lemma-delta            per epsilon, a bump row and a constant-phi row: mean = integral,
///                          oracle = phi(v_k, .., v_k), dev_stderr empty (deterministic).
/// Row labels live in the sidecar, in row order.
struct ResultRow {
  std::string subcommand;
  int k = 0;
  std::optional<double> epsilon;
  std::optional<double> mean;
  std::optional<double> std_error;
  std::optional<double> m1;
  std::optional<double> m2;
  std::optional<double> m4;
  std::optional<double> oracle;
  std::optional<double> dev_stderr;
  long n_paths = 0;
  int n_steps = 0;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_s;
  std::string label;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  nlohmann::json diagnostics = nlohmann::json::object();
  std::vector<std::string> warnings;
};

struct RunOptions {
  Execution execution = Execution::kParallel;
};

/// Dispatches to the module pipeline for config.subcommand. Upstream failures
/// inside path ensembles surface as ExperimentError with (epsilon, path index).
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

inline constexpr const char* kCsvHeader =
    "subcommand,k,epsilon,mean,stderr,m1,m2,m4,oracle,dev_stderr,n_paths,n_steps,seed,wall_time_s";

/// Shortest round-trip decimal form, independent of locale.
std::string format_double(double v);

std::string format_csv(const std::vector<ResultRow>& rows);
/// Full config, library version, row labels, diagnostics and warnings.
std::string format_sidecar(const ExperimentConfig& config, const ExperimentResult& result);

/// Writes config.output_path and config.output_path + ".json".
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace slt

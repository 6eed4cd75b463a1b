#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slt/functional.hpp"
#include "slt/stats.hpp"
#include "slt/weight.hpp"

namespace slt {

enum class Execution {
  kSerial,    // plain loop over paths
  kParallel,  // OpenMP loop over paths
};

struct EnsembleConfig {
  long n_paths = 10000;
  int n_steps = 4096;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;
  KernelOptions kernel{};
};

/// Per-path values on one coupled ensemble: for each path, epsilon level and
/// weight, the raw levels T_{eps,1..k} followed by the renormalized value.
class EnsembleSamples {
 public:
  EnsembleSamples(long n_paths, int n_eps, int n_weights, int k);

  long n_paths() const noexcept { return n_paths_; }
  int n_eps() const noexcept { return n_eps_; }
  int n_weights() const noexcept { return n_weights_; }
  int k() const noexcept { return k_; }

  /// l in 1..k.
  double level(long path, int eps, int weight, int l) const { return data_[index(path, eps, weight, l - 1)]; }
  double renormalized(long path, int eps, int weight) const { return data_[index(path, eps, weight, k_)]; }

  std::vector<double> level_column(int eps, int weight, int l) const;
  std::vector<double> renormalized_column(int eps, int weight) const;

  /// Slot block for one path: [eps][weight][k + 1].
  std::span<double> path_block(long path);

 private:
  std::size_t index(long path, int eps, int weight, int slot) const noexcept {
    return ((static_cast<std::size_t>(path) * n_eps_ + eps) * n_weights_ + weight) * (k_ + 1) + slot;
  }

  long n_paths_;
  int n_eps_;
  int n_weights_;
  int k_;
  std::vector<double> data_;
};

/// Runs sample_path -> simplex levels -> Dynkin renormalization for every
/// path, epsilon level and weight. Paths are shared across levels and
/// weights. Output is identical for serial and parallel execution.
///
/// Throws ExperimentError carrying (epsilon, path index) of the lowest
/// failing path.
EnsembleSamples sample_functionals(const EnsembleConfig& config,
                                   std::span<const ScalarWeight> weights,
                                   std::span<const double> eps_levels, int k);

struct RenormalizedEstimate {
  double epsilon = 0.0;
  int k = 1;
  MCStats renormalized;
  std::vector<MCStats> levels;  // levels[l-1] summarizes T_{eps,l}
};

RenormalizedEstimate estimate_renormalized(const EnsembleConfig& config, const ScalarWeight& rho,
                                           double epsilon, int k);

/// One estimate per epsilon level, all on the same paths.
std::vector<RenormalizedEstimate> estimate_renormalized(const EnsembleConfig& config,
                                                        const ScalarWeight& rho,
                                                        std::span<const double> eps_levels, int k);

struct CauchyRow {
  double eps_coarse = 0.0;
  double eps_fine = 0.0;
  double mean_sq_diff = 0.0;
  double std_error = 0.0;
};

/// Sample mean of (T_{eps_j,k} - T_{eps_{j+1},k})^2 (renormalized) over a
/// shared ensemble, for consecutive levels.
std::vector<CauchyRow> cauchy_diagnostic(const EnsembleConfig& config, const ScalarWeight& rho,
                                         std::span<const double> eps_levels, int k);

std::vector<CauchyRow> cauchy_rows(const EnsembleSamples& samples,
                                   std::span<const double> eps_levels, int weight = 0);

}  // namespace slt

#include "slt/ensemble.hpp"

#include <exception>
#include <limits>
#include <stdexcept>

#include "slt/errors.hpp"

namespace slt {

EnsembleSamples::EnsembleSamples(long n_paths, int n_eps, int n_weights, int k)
    : n_paths_(n_paths), n_eps_(n_eps), n_weights_(n_weights), k_(k),
      data_(static_cast<std::size_t>(n_paths) * n_eps * n_weights * (k + 1), 0.0) {}

std::vector<double> EnsembleSamples::level_column(int eps, int weight, int l) const {
  std::vector<double> out(n_paths_);
  for (long p = 0; p < n_paths_; ++p) out[p] = level(p, eps, weight, l);
  return out;
}

std::vector<double> EnsembleSamples::renormalized_column(int eps, int weight) const {
  std::vector<double> out(n_paths_);
  for (long p = 0; p < n_paths_; ++p) out[p] = renormalized(p, eps, weight);
  return out;
}

std::span<double> EnsembleSamples::path_block(long path) {
  const std::size_t block = static_cast<std::size_t>(n_eps_) * n_weights_ * (k_ + 1);
  return std::span<double>(data_).subspan(static_cast<std::size_t>(path) * block, block);
}

namespace {

struct PathFailure {
  std::exception_ptr error;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
};

void fill_path(const EnsembleConfig& config, std::span<const ScalarWeight> weights,
               std::span<const double> eps_levels, int k, long p, std::span<double> block,
               PathFailure& failure) {
  const int n_weights = static_cast<int>(weights.size());
  double current_eps = std::numeric_limits<double>::quiet_NaN();
  try {
    const PlanarPath path = ensemble_path(config.n_steps, config.seed, static_cast<std::uint64_t>(p));
    Eigen::MatrixXd rho(config.n_steps, n_weights);
    for (int w = 0; w < n_weights; ++w) rho.col(w) = node_values(path, weights[w]);

    std::size_t slot = 0;
    for (double eps : eps_levels) {
      current_eps = eps;
      const Eigen::MatrixXd levels = simplex_levels(path, rho, eps, k, config.kernel);
      for (int w = 0; w < n_weights; ++w) {
        const Eigen::VectorXd t = levels.col(w);
        for (int l = 0; l < k; ++l) block[slot++] = t[l];
        block[slot++] = dynkin_renormalize(std::span<const double>(t.data(), k), eps, k);
      }
    }
  } catch (...) {
    failure.error = std::current_exception();
    failure.epsilon = current_eps;
  }
}

}  // namespace

EnsembleSamples sample_functionals(const EnsembleConfig& config,
                                   std::span<const ScalarWeight> weights,
                                   std::span<const double> eps_levels, int k) {
  if (config.n_paths < 2) throw std::invalid_argument("ensemble: n_paths must be >= 2");
  if (config.n_steps < 1) throw std::invalid_argument("ensemble: n_steps must be >= 1");
  if (k < 1) throw std::invalid_argument("ensemble: k must be >= 1");
  if (weights.empty()) throw std::invalid_argument("ensemble: need at least one weight");
  if (eps_levels.empty()) throw std::invalid_argument("ensemble: need at least one epsilon level");
  for (double eps : eps_levels) {
    if (!(eps > 0.0)) throw std::invalid_argument("ensemble: epsilon levels must be > 0");
  }
  check_budget(config.n_steps, k, config.kernel);

  EnsembleSamples samples(config.n_paths, static_cast<int>(eps_levels.size()),
                          static_cast<int>(weights.size()), k);
  std::vector<PathFailure> failures(config.n_paths);

  if (config.execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long p = 0; p < config.n_paths; ++p) {
      fill_path(config, weights, eps_levels, k, p, samples.path_block(p), failures[p]);
    }
  } else {
    for (long p = 0; p < config.n_paths; ++p) {
      fill_path(config, weights, eps_levels, k, p, samples.path_block(p), failures[p]);
    }
  }

  for (long p = 0; p < config.n_paths; ++p) {
    if (!failures[p].error) continue;
    try {
      std::rethrow_exception(failures[p].error);
    } catch (const std::exception& e) {
      throw ExperimentError(e.what(), failures[p].epsilon, p);
    }
  }
  return samples;
}

std::vector<RenormalizedEstimate> estimate_renormalized(const EnsembleConfig& config,
                                                        const ScalarWeight& rho,
                                                        std::span<const double> eps_levels, int k) {
  const EnsembleSamples samples = sample_functionals(config, std::span(&rho, 1), eps_levels, k);
  std::vector<RenormalizedEstimate> out;
  for (int e = 0; e < samples.n_eps(); ++e) {
    RenormalizedEstimate est;
    est.epsilon = eps_levels[e];
    est.k = k;
    est.renormalized = summarize(samples.renormalized_column(e, 0));
    for (int l = 1; l <= k; ++l) est.levels.push_back(summarize(samples.level_column(e, 0, l)));
    out.push_back(std::move(est));
  }
  return out;
}

RenormalizedEstimate estimate_renormalized(const EnsembleConfig& config, const ScalarWeight& rho,
                                           double epsilon, int k) {
  return estimate_renormalized(config, rho, std::span(&epsilon, 1), k).front();
}

std::vector<CauchyRow> cauchy_rows(const EnsembleSamples& samples,
                                   std::span<const double> eps_levels, int weight) {
  if (eps_levels.size() != static_cast<std::size_t>(samples.n_eps())) {
    throw std::invalid_argument("cauchy_rows: epsilon list does not match the samples");
  }
  std::vector<CauchyRow> rows;
  for (int e = 0; e + 1 < samples.n_eps(); ++e) {
    std::vector<double> sq(samples.n_paths());
    for (long p = 0; p < samples.n_paths(); ++p) {
      const double d = samples.renormalized(p, e, weight) - samples.renormalized(p, e + 1, weight);
      sq[p] = d * d;
    }
    const MCStats s = summarize(sq);
    rows.push_back({eps_levels[e], eps_levels[e + 1], s.mean, s.std_error});
  }
  return rows;
}

std::vector<CauchyRow> cauchy_diagnostic(const EnsembleConfig& config, const ScalarWeight& rho,
                                         std::span<const double> eps_levels, int k) {
  if (eps_levels.size() < 2) {
    throw std::invalid_argument("cauchy_diagnostic: need at least 2 epsilon levels");
  }
  const EnsembleSamples samples = sample_functionals(config, std::span(&rho, 1), eps_levels, k);
  return cauchy_rows(samples, eps_levels);
}

}  // namespace slt

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "slt/path.hpp"
#include "slt/weight.hpp"

namespace slt {

/// f(u) = int_0^1 p_t(u) dt with p_t the N(0, t I) density on R^2, by
/// adaptive Gauss-Kronrod quadrature. f(0) = +inf, so u = 0 is rejected.
double example32_f(Point2 u);

/// Random field rho(u) = f(u - xi), xi ~ N(0, I), damped to
/// rho_1(u) = exp(-|u|^2) rho(u). Its covariance
///
///     E rho_1(u) rho_1(v) = exp(-|u|^2 - |v|^2) E f(u - xi) f(v - xi)
///
/// is estimated by plain Monte Carlo with one fixed set of xi draws, so the
/// estimate is a Gram matrix of sample vectors and stays positive
/// semidefinite.
class Example32Field {
 public:
  Example32Field(std::vector<Point2> grid, long mc_samples, std::uint64_t seed);

  const std::vector<Point2>& grid() const noexcept { return grid_; }
  long mc_samples() const noexcept { return static_cast<long>(shifts_.size()); }

  double f(Point2 u) const { return example32_f(u); }

  /// Estimate for arbitrary (u, v) with the stored draws.
  double covariance(Point2 u, Point2 v) const;
  CovarianceOracle oracle() const;

  /// Covariance on the grid and the per-entry Monte Carlo standard error.
  const Eigen::MatrixXd& covariance_matrix() const noexcept { return cov_; }
  const Eigen::MatrixXd& covariance_stderr() const noexcept { return cov_se_; }

 private:
  std::vector<Point2> grid_;
  std::vector<Point2> shifts_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd cov_se_;
};

Example32Field example32_field(std::vector<Point2> grid, long mc_samples, std::uint64_t seed);

}  // namespace slt

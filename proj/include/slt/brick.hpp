#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slt/path.hpp"
#include "slt/weight.hpp"

namespace slt {

/// Coordinates (x, e_k), k = 1..len, in the basis named by `basis_label`.
struct CoordVector {
  std::string basis_label;
  Eigen::VectorXd values;
};

enum class TailRule {
  kZero,      // widths beyond the stored prefix are 0
  kEnvelope,  // widths beyond the prefix are unknown but sum of squares <= tail_sq_sum
};

/// Hilbert-Schmidt brick K({e_k}, {eps_k}) = {x : |(x, e_k)| <= eps_k for all k},
/// stored as a finite prefix of widths plus a tail rule.
struct Brick {
  std::string basis_label;
  std::vector<double> widths;
  TailRule tail = TailRule::kZero;
  double tail_sq_sum = 0.0;

  /// sum eps_k^2 over the prefix plus the declared tail.
  double squared_size() const;
};

/// Finite skeleton of a compact set: equal-length coordinate vectors.
struct FiniteCompact {
  std::string basis_label;
  std::vector<Eigen::VectorXd> points;

  int dimension() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  /// Inner products (x_i, x_j).
  Eigen::MatrixXd gram() const;
};

/// Non-strict per-coordinate test over the stored prefix.
bool brick_contains(const CoordVector& x, const Brick& b);

/// eps_k = max over points of |x_k|.
Brick covering_brick(const FiniteCompact& points);

/// Brick covering b + {t h : |t| <= 1}: widths eps_k + |h_k|.
Brick minkowski_cover(const Brick& b, const CoordVector& h);

/// Covers the image of b under the projection killing coordinates
/// `drop_indices` (1-based).
Brick project_cover(const Brick& b, const std::set<int>& drop_indices);

struct IsonormalSample {
  Eigen::MatrixXd gram;   // covariance of the skeleton
  Eigen::MatrixXd draws;  // n_samples x n_points
  std::uint64_t seed = 0;
  double jitter = 0.0;    // diagonal added to make the factorization succeed
};

/// Centered Gaussian vectors with covariance `gram`. A diagonal jitter of
/// 1e-10 * trace / M is added if the plain Cholesky factorization fails.
/// Throws NotPositiveSemidefiniteError when an eigenvalue lies below
/// -1e-6 * trace, or if the jittered factorization still fails.
IsonormalSample isonormal_sample(const Eigen::MatrixXd& gram, long n_samples, std::uint64_t seed);
IsonormalSample isonormal_sample(const FiniteCompact& points, long n_samples, std::uint64_t seed);
IsonormalSample isonormal_sample(const CovarianceOracle& oracle, std::span<const Point2> points,
                                 long n_samples, std::uint64_t seed);

/// d(u, v) = sqrt(G_uu + G_vv - 2 G_uv), clipped at 0.
Eigen::MatrixXd canonical_metric(const Eigen::MatrixXd& gram);

struct DudleyEstimate {
  double value = 0.0;
  // (eps, greedy net size) on the lattice, coarse to fine.
  std::vector<std::pair<double, int>> covering_numbers;
};

/// Riemann sum of sqrt(ln H_eps) from 0 to the diameter.
///
/// H_eps is the size of a greedy closed-ball eps-net with centers in the
/// point set, scanning points in input order; that is at most the minimal
/// net for radius eps/2, so the result is an upper-bound estimate. The eps
/// grid is the absolute lattice 2^(i/8), with H taken at each cell's lower
/// end and the cell below the smallest pairwise distance using H = number of
/// distinct points. Both choices keep the estimate monotone when a prefix of
/// the point list is kept.
DudleyEstimate dudley_estimate(const FiniteCompact& points, const Eigen::MatrixXd& metric);

/// Greedy closed-ball net size at radius eps.
int greedy_net_size(const Eigen::MatrixXd& metric, double eps);

}  // namespace slt

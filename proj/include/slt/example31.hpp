#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slt/brick.hpp"
#include "slt/weight.hpp"

namespace slt {

enum class Example31Basis {
  kGramSchmidt,    // pivoted Gram-Schmidt of {f_1..f_N}
  kDyadicRotated,  // Gram-Schmidt followed by Walsh-Hadamard rotations on dyadic index blocks
};

/// Piecewise-linear L_2-valued curve built from independent two-point
/// variables f_n, P{f_n = n^(1/6)} = 1/n, P{f_n = 0} = 1 - 1/n:
///
///     rho_0(t) = (t - n) f_{n+1} + (n + 1 - t) f_n,  t in [n, n+1].
///
/// Everything is derived from the closed-form Gram matrix
/// (f_n, f_n) = n^(-2/3), (f_n, f_m) = (n m)^(-5/6).
///
/// In the plain Gram-Schmidt basis the centered f_n are orthogonal, so the
/// coordinate sups decay only like m^(-2/3). Rotating each dyadic block
/// [2^j, 2^(j+1)) of basis positions by a normalized Hadamard matrix spreads
/// every f_n evenly over its block and makes the sups decay like m^(-5/3).
class Example31 {
 public:
  explicit Example31(int n, Example31Basis basis = Example31Basis::kGramSchmidt);

  static double gram_entry(int n, int m);

  int size() const noexcept { return n_; }
  Example31Basis basis() const noexcept { return basis_; }
  std::string basis_label() const;

  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  /// Row n-1 holds the coordinates of f_n; coordinates() * coordinates()^T == gram().
  const Eigen::MatrixXd& coordinates() const noexcept { return coords_; }
  /// 1-based index of the f chosen at each Gram-Schmidt step.
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  /// Coordinates of rho_0(t), t in [1, N].
  Eigen::VectorXd rho0(double t) const;
  /// (rho_0(t), rho_0(s)) from the Gram matrix, independent of the basis.
  double inner(double t, double s) const;

  /// s_m = max over t of (rho_0(t), e_m)^2. Each coordinate is linear on
  /// [n, n+1], so the max over the integer nodes is the max over [1, N].
  std::vector<double> coordinate_sups() const;

  /// Planar lift t(u) = 1 + (N - 1) * min(|u| / radius, 1).
  double lift(Point2 u, double radius) const;
  /// Planar points whose lift hits t = 1..N.
  std::vector<Point2> natural_grid(double radius = 3.0) const;

  /// First `m_coords` coordinates as planar weights u -> (rho_0(t(u)), e_m).
  /// tail_bound = sum_{m > m_coords} s_m + N^(-2/3).
  HilbertWeight hilbert_weight(int m_coords, double radius = 3.0) const;

  /// rho_0(t) for each t, as a skeleton in this basis.
  FiniteCompact skeleton(std::span<const double> ts) const;

 private:
  int n_;
  Example31Basis basis_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd coords_;
  std::vector<int> pivots_;
};

/// Pivoted Cholesky G = L L^T, i.e. Gram-Schmidt on the generators in
/// largest-residual order. Row i of the result holds the coordinates of
/// generator i; `pivots` receives the 1-based pivot order. Throws
/// RankDeficiencyError naming the generator whose residual vanished.
Eigen::MatrixXd pivoted_gram_schmidt(const Eigen::MatrixXd& gram, std::vector<int>& pivots);

/// Block-diagonal orthogonal matrix: identity on position 0, a normalized
/// Sylvester-Hadamard block on each [2^j, 2^(j+1)), ragged remainder split
/// into power-of-two blocks.
Eigen::MatrixXd dyadic_hadamard_rotation(int size);

}  // namespace slt

#include <gtest/gtest.h>

#include <cmath>

#include "slt/errors.hpp"
#include "slt/example31.hpp"

using slt::Example31;
using slt::Example31Basis;

namespace {

// E f_n f_m from the two-point law directly: f_n = n^(1/6) w.p. 1/n, else 0.
double two_point_inner(int n, int m) {
  const double a = std::pow(n, 1.0 / 6.0), b = std::pow(m, 1.0 / 6.0);
  if (n == m) return a * a / n;
  return (a / n) * (b / m);
}

}  // namespace

TEST(Example31, GramEntriesFromTwoPointLaw) {
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(Example31::gram_entry(n, m), two_point_inner(n, m), 1e-15);
  }
  EXPECT_NEAR(Example31::gram_entry(2, 3), 0.2246677, 1e-7);
}

TEST(Example31, CoordinatesReproduceGram) {
  for (auto basis : {Example31Basis::kGramSchmidt, Example31Basis::kDyadicRotated}) {
    const Example31 ex(50, basis);
    const Eigen::MatrixXd c = ex.coordinates();
    EXPECT_LT((c * c.transpose() - ex.gram()).cwiseAbs().maxCoeff(), 1e-13);
    for (int n = 1; n <= 50; ++n) EXPECT_NEAR(ex.rho0(n).squaredNorm(), std::pow(n, -2.0 / 3.0), 1e-10);
  }
}

TEST(Example31, GramIsPositiveDefinite) {
  const Example31 ex(50);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ex.gram());
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  EXPECT_TRUE(ex.gram().isApprox(ex.gram().transpose(), 0.0));
}

TEST(Example31, InnerMatchesCoordinatesBetweenNodes) {
  const Example31 ex(20, Example31Basis::kDyadicRotated);
  for (double t : {1.0, 2.5, 7.25, 19.9}) {
    for (double s : {1.5, 3.0, 12.75}) EXPECT_NEAR(ex.inner(t, s), ex.rho0(t).dot(ex.rho0(s)), 1e-14);
  }
}

TEST(Example31, LipschitzOnEachUnitInterval) {
  const Example31 ex(30);
  for (int n = 1; n < 30; ++n) {
    const double fn = std::sqrt(Example31::gram_entry(n, n));
    for (double a : {0.0, 0.3}) {
      for (double b : {0.6, 1.0}) {
        const double d = (ex.rho0(n + a) - ex.rho0(n + b)).norm();
        EXPECT_LE(d, 2.0 * fn * (b - a) + 1e-15) << "n=" << n;
      }
    }
  }
}

TEST(Example31, HadamardRotationIsOrthogonal) {
  for (int size : {1, 2, 7, 50, 64}) {
    const Eigen::MatrixXd q = slt::dyadic_hadamard_rotation(size);
    EXPECT_LT((q.transpose() * q - Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Example31, PivotOrderAndRankDeficiency) {
  const Example31 ex(6);
  EXPECT_EQ(ex.pivots().front(), 1);
  Eigen::MatrixXd g(3, 3);
  g << 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.5;
  std::vector<int> pivots;
  try {
    slt::pivoted_gram_schmidt(g, pivots);
    FAIL();
  } catch (const slt::RankDeficiencyError& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Example31, DyadicSupsDecayFasterThanGramSchmidt) {
  // Gram-Schmidt sups decay like m^(-2/3); the rotated ones like m^(-5/3).
  const Example31 gs(256), dy(256, Example31Basis::kDyadicRotated);
  const auto a = gs.coordinate_sups(), b = dy.coordinate_sups();
  double tail_gs = 0.0, tail_dy = 0.0;
  for (int m = 64; m < 256; ++m) {
    tail_gs = std::max(tail_gs, a[m]);
    tail_dy = std::max(tail_dy, b[m]);
  }
  EXPECT_GT(tail_gs, 1e-3);
  EXPECT_LT(tail_dy, 1e-3);
}

TEST(Example31, HilbertWeightFollowsLift) {
  const Example31 ex(10, Example31Basis::kDyadicRotated);
  const auto w = ex.hilbert_weight(10, 3.0);
  const auto grid = ex.natural_grid(3.0);
  for (int t = 1; t <= 10; ++t) {
    EXPECT_NEAR(ex.lift(grid[t - 1], 3.0), t, 1e-12);
    const Eigen::VectorXd x = ex.rho0(t);
    for (int m = 0; m < 10; ++m) EXPECT_NEAR(w.coords[m](grid[t - 1]), x[m], 1e-14);
  }
  // Beyond the radius the lift saturates at t = N.
  EXPECT_EQ(ex.lift({100.0, 0.0}, 3.0), 10.0);
  EXPECT_THROW(ex.hilbert_weight(0), std::invalid_argument);
  EXPECT_THROW(ex.rho0(0.5), std::invalid_argument);
}

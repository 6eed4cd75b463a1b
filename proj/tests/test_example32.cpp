#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "slt/example32.hpp"

using slt::Point2;

TEST(Example32, FMatchesExponentialIntegral) {
  for (double r2 : {1e-8, 1e-3, 0.25, 1.0, 2.0, 5.0, 40.0}) {
    const double u = std::sqrt(r2);
    const double expected = boost::math::expint(1, r2 / 2.0) / (2.0 * std::numbers::pi);
    EXPECT_NEAR(slt::example32_f({u / std::sqrt(2.0), u / std::sqrt(2.0)}), expected, 1e-13 * expected + 1e-300)
        << "r2=" << r2;
  }
}

TEST(Example32, FMatchesSimpsonOracle) {
  for (double r2 : {0.01, 2.0, 9.0}) {
    EXPECT_NEAR(slt::example32_f({std::sqrt(r2), 0.0}), oracle::example32_f_simpson(r2), 1e-10);
  }
}

TEST(Example32, HandValueAtRadiusSqrt2) {
  EXPECT_NEAR(slt::example32_f({1.0, 1.0}), 0.2193839343955205 / (2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(slt::example32_f({1.0, 1.0}), 0.0349160, 1e-7);
}

TEST(Example32, DecreasesAlongRays) {
  EXPECT_GT(slt::example32_f({0.5, 0.0}), slt::example32_f({1.0, 0.0}));
  EXPECT_GT(slt::example32_f({0.0, 0.3}), slt::example32_f({0.0, 0.31}));
  EXPECT_THROW(slt::example32_f({0.0, 0.0}), std::invalid_argument);
}

TEST(Example32, CovarianceIsSymmetricPsd) {
  const std::vector<Point2> grid = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}, {0.7, 0.7}};
  const auto field = slt::example32_field(grid, 400, 3);
  const Eigen::MatrixXd& c = field.covariance_matrix();
  EXPECT_TRUE(c.isApprox(c.transpose(), 1e-15));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8);
  EXPECT_NEAR(field.covariance(grid[0], grid[4]), c(0, 4), 1e-14);
  EXPECT_NEAR(field.oracle()(grid[1], grid[1]), c(1, 1), 1e-14);
  EXPECT_GT(field.covariance_stderr()(0, 0), 0.0);
}

TEST(Example32, CovarianceNearIndependentQuadrature) {
  // Var at u: e^(-2|u|^2) E f(u - xi)^2, by 2-D midpoint quadrature against the N(0, I) density.
  const Point2 u{0.7, 0.7};
  const int m = 400;
  const double half = 7.0, h = 2.0 * half / m;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double x = -half + (i + 0.5) * h, y = -half + (j + 0.5) * h;
      const double r2 = (u.x - x) * (u.x - x) + (u.y - y) * (u.y - y);
      const double f = boost::math::expint(1, r2 / 2.0) / (2.0 * std::numbers::pi);
      total += f * f * std::exp(-(x * x + y * y) / 2.0) / (2.0 * std::numbers::pi) * h * h;
    }
  }
  const double exact = std::exp(-2.0 * slt::squared_norm(u)) * total;
  const auto field = slt::example32_field({u}, 20000, 8);
  // Midpoint rule is crude near the log singularity; allow 2% on top of 5 stderr.
  EXPECT_NEAR(field.covariance_matrix()(0, 0), exact, 5 * field.covariance_stderr()(0, 0) + 0.02 * exact);
}

TEST(Example32, RejectsBadInput) {
  EXPECT_THROW(slt::example32_field({{0.0, 0.0}}, 200, 1), std::invalid_argument);
  EXPECT_THROW(slt::example32_field({{1.0, 0.0}}, 50, 1), std::invalid_argument);
}

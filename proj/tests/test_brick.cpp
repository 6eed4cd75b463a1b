#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "slt/brick.hpp"
#include "slt/errors.hpp"
#include "slt/example31.hpp"

using slt::Brick;
using slt::CoordVector;
using slt::FiniteCompact;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

// Uniform point of the stored prefix of b.
Eigen::VectorXd inside(const Brick& b, std::mt19937_64& g) {
  Eigen::VectorXd x(b.widths.size());
  for (std::size_t i = 0; i < b.widths.size(); ++i) {
    x[i] = std::uniform_real_distribution<double>(-b.widths[i], b.widths[i])(g);
  }
  return x;
}

Brick random_brick(int m, std::mt19937_64& g) {
  Brick b{"B", {}, slt::TailRule::kZero, 0.0};
  for (int i = 0; i < m; ++i) b.widths.push_back(std::uniform_real_distribution<double>(0.0, 2.0)(g));
  return b;
}

}  // namespace

TEST(Brick, ContainsBoundaryAndOrigin) {
  const Brick b{"B", {1.0, 2.0}, slt::TailRule::kZero, 0.0};
  EXPECT_TRUE(slt::brick_contains({"B", vec({0.0, 0.0})}, b));
  EXPECT_TRUE(slt::brick_contains({"B", vec({1.0, -2.0})}, b));
  EXPECT_FALSE(slt::brick_contains({"B", vec({0.0, 2.0 + 1e-9})}, b));
  EXPECT_TRUE(slt::brick_contains({"B", vec({0.5})}, b));
  EXPECT_THROW(slt::brick_contains({"other", vec({0.0})}, b), std::invalid_argument);
  EXPECT_THROW(slt::brick_contains({"B", vec({0.0, 0.0, 0.0})}, b), std::invalid_argument);
}

TEST(Brick, SquaredSizeIncludesTail) {
  const Brick b{"B", {1.0, 2.0}, slt::TailRule::kEnvelope, 0.5};
  EXPECT_EQ(b.squared_size(), 5.5);
}

TEST(Brick, CoveringBrickHandCases) {
  const Brick one = slt::covering_brick({"B", {vec({-0.5, 3.0})}});
  EXPECT_EQ(one.widths, (std::vector<double>{0.5, 3.0}));
  EXPECT_TRUE(slt::brick_contains({"B", vec({-0.5, 3.0})}, one));
  const Brick two = slt::covering_brick({"B", {vec({1.0, 0.0}), vec({0.0, 2.0})}});
  EXPECT_EQ(two.widths, (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(slt::covering_brick({"B", {}}), std::invalid_argument);
}

TEST(Brick, CoveringBrickContainsRandomSample) {
  std::mt19937_64 g(1);
  std::normal_distribution<double> n;
  FiniteCompact pts{"B", {}};
  for (int i = 0; i < 1000; ++i) pts.points.push_back(vec({n(g), n(g), n(g), n(g)}));
  const Brick b = slt::covering_brick(pts);
  for (const auto& x : pts.points) EXPECT_TRUE(slt::brick_contains({"B", x}, b));
}

TEST(Brick, MinkowskiHandAndProperty) {
  const Brick b{"B", {1.0, 1.0}, slt::TailRule::kZero, 0.0};
  EXPECT_EQ(slt::minkowski_cover(b, {"B", vec({0.0, 0.0})}).widths, b.widths);
  EXPECT_EQ(slt::minkowski_cover(b, {"B", vec({1.0, 0.0})}).widths, (std::vector<double>{2.0, 1.0}));
  EXPECT_THROW(slt::minkowski_cover(b, {"X", vec({1.0, 0.0})}), std::invalid_argument);

  std::mt19937_64 g(2);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Brick r = random_brick(5, g);
    const CoordVector h{"B", vec({n(g), n(g), n(g), n(g), n(g)})};
    const Brick cover = slt::minkowski_cover(r, h);
    const Eigen::VectorXd x = inside(r, g) + t(g) * h.values;
    ASSERT_TRUE(slt::brick_contains({"B", x}, cover));
  }
}

TEST(Brick, ProjectHandAndProperty) {
  const Brick b{"B", {3.0, 2.0, 1.0}, slt::TailRule::kZero, 0.0};
  EXPECT_EQ(slt::project_cover(b, {}).widths, b.widths);
  EXPECT_EQ(slt::project_cover(b, {1}).widths, (std::vector<double>{0.0, 2.0, 1.0}));
  EXPECT_THROW(slt::project_cover(b, {4}), std::invalid_argument);
  EXPECT_THROW(slt::project_cover(b, {0}), std::invalid_argument);

  std::mt19937_64 g(3);
  for (int trial = 0; trial < 10000; ++trial) {
    const Brick r = random_brick(4, g);
    const std::set<int> drop = {1 + static_cast<int>(g() % 4)};
    Eigen::VectorXd x = inside(r, g);
    for (int i : drop) x[i - 1] = 0.0;
    ASSERT_TRUE(slt::brick_contains({"B", x}, slt::project_cover(r, drop)));
  }
}

TEST(Isonormal, SinglePointVariance) {
  FiniteCompact one{"B", {vec({0.6, 0.8})}};
  const auto s = slt::isonormal_sample(one, 10000, 4);
  const double var = s.draws.col(0).squaredNorm() / 10000.0;
  EXPECT_NEAR(var, 1.0, 0.05);
  EXPECT_EQ(s.jitter, 0.0);
}

TEST(Isonormal, CoincidentPointsAreCorrelated) {
  FiniteCompact two{"B", {vec({1.0, 2.0}), vec({1.0, 2.0})}};
  const auto s = slt::isonormal_sample(two, 10000, 5);
  EXPECT_GT(s.jitter, 0.0);
  const double corr = s.draws.col(0).dot(s.draws.col(1)) / (s.draws.col(0).norm() * s.draws.col(1).norm());
  EXPECT_GE(corr, 0.999);
}

TEST(Isonormal, RejectsIndefiniteGram) {
  Eigen::Matrix2d g;
  g << 1.0, 0.0, 0.0, -0.5;
  EXPECT_THROW(slt::isonormal_sample(Eigen::MatrixXd(g), 100, 1), slt::NotPositiveSemidefiniteError);
}

TEST(Isonormal, Example31SkeletonFidelity) {
  const slt::Example31 ex(30);
  const double ts[] = {1.0, 2.0, 3.5, 8.0, 20.0};
  const FiniteCompact sk = ex.skeleton(ts);
  Eigen::MatrixXd gram(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) gram(i, j) = ex.inner(ts[i], ts[j]);
  const auto s = slt::isonormal_sample(sk, 10000, 6);
  const Eigen::MatrixXd emp = s.draws.transpose() * s.draws / 10000.0;
  EXPECT_LT((emp - gram).norm() / gram.norm(), 0.05);
  // Same seed, same draws.
  EXPECT_EQ(slt::isonormal_sample(sk, 10000, 6).draws, s.draws);
}

TEST(Isonormal, OracleSkeletonUsesOracleValues) {
  const slt::CovarianceOracle k{[](slt::Point2 u, slt::Point2 v) {
    return std::exp(-0.5 * slt::squared_norm({u.x - v.x, u.y - v.y}));
  }};
  const std::vector<slt::Point2> pts = {{0, 0}, {1, 0}, {0, 2}};
  const auto s = slt::isonormal_sample(k, pts, 100, 1);
  EXPECT_NEAR(s.gram(0, 1), std::exp(-0.5), 1e-15);
}

TEST(Metric, CanonicalMetricFromGram) {
  Eigen::Matrix2d g;
  g << 2.0, 0.5, 0.5, 1.0;
  const Eigen::MatrixXd d = slt::canonical_metric(g);
  EXPECT_NEAR(d(0, 1), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(d(0, 0), 0.0);
}

TEST(Dudley, SingleAndTwoPoints) {
  FiniteCompact one{"B", {vec({1.0})}};
  EXPECT_EQ(slt::dudley_estimate(one, Eigen::MatrixXd::Zero(1, 1)).value, 0.0);
  for (double d : {0.3, 1.0, 5.0}) {
    FiniteCompact two{"B", {vec({0.0}), vec({d})}};
    Eigen::Matrix2d m;
    m << 0.0, d, d, 0.0;
    const double cell = std::pow(2.0, 1.0 / 8.0);
    EXPECT_NEAR(slt::dudley_estimate(two, m).value, d * std::sqrt(std::log(2.0)),
                d * (cell - 1.0) * std::sqrt(std::log(2.0)))
        << "d=" << d;
  }
}

TEST(Dudley, RejectsAsymmetricMetric) {
  FiniteCompact two{"B", {vec({0.0}), vec({1.0})}};
  Eigen::Matrix2d m;
  m << 0.0, 1.0, 0.9, 0.0;
  EXPECT_THROW(slt::dudley_estimate(two, m), std::invalid_argument);
}

TEST(Dudley, MonotoneUnderTruncation) {
  const slt::Example31 ex(40);
  std::vector<double> ts;
  for (int t = 1; t <= 40; ++t) ts.push_back(t);
  double prev = std::numeric_limits<double>::infinity();
  for (int keep : {40, 30, 20, 10, 5, 2}) {
    const FiniteCompact sk = ex.skeleton(std::span(ts.data(), keep));
    const double v = slt::dudley_estimate(sk, slt::canonical_metric(sk.gram())).value;
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(v, prev) << "keep=" << keep;
    prev = v;
  }
}

TEST(Dudley, GreedyNetSizes) {
  Eigen::Matrix3d m;
  m << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  EXPECT_EQ(slt::greedy_net_size(m, 0.5), 3);
  EXPECT_EQ(slt::greedy_net_size(m, 1.0), 2);
  EXPECT_EQ(slt::greedy_net_size(m, 2.0), 1);
}

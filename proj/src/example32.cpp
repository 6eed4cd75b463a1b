#include "slt/example32.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slt/kernel.hpp"
#include "slt/rng.hpp"

namespace slt {

double example32_f(Point2 u) {
  const double r2 = squared_norm(u);
  if (!(r2 > 0.0)) throw std::invalid_argument("example32 f: undefined at the origin (f(0) = +inf)");
  // In log time x = ln t the integrand exp(-r^2 / 2e^x) / 2pi is a smooth step
  // bounded by 1/2pi; below x_lo it is exp(-750) and negligible.
  auto integrand = [r2](double x) { return std::exp(-r2 / (2.0 * std::exp(x))) / kTwoPi; };
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double x_lo = std::log(r2 / 1500.0);
  if (x_lo >= 0.0) return 0.0;
  // Split at the step (t = r^2 / 2) so both halves are smooth on their own.
  const double x_mid = std::log(r2 / 2.0);
  double total = 0.0;
  if (x_mid > x_lo && x_mid < 0.0) {
    total = Rule::integrate(integrand, x_lo, x_mid, 15, 1e-14) + Rule::integrate(integrand, x_mid, 0.0, 15, 1e-14);
  } else {
    total = Rule::integrate(integrand, x_lo, 0.0, 15, 1e-14);
  }
  return total;
}

Example32Field::Example32Field(std::vector<Point2> grid, long mc_samples, std::uint64_t seed)
    : grid_(std::move(grid)) {
  if (grid_.empty()) throw std::invalid_argument("example32_field: empty grid");
  for (Point2 u : grid_) {
    if (squared_norm(u) == 0.0) throw std::invalid_argument("example32_field: grid contains the origin");
  }
  if (mc_samples < 100) throw std::invalid_argument("example32_field: mc_samples must be >= 100");

  std::mt19937_64 engine(family_seed(seed, kFieldStream));
  std::normal_distribution<double> normal(0.0, 1.0);
  shifts_.resize(mc_samples);
  for (auto& z : shifts_) {
    z.x = normal(engine);
    z.y = normal(engine);
  }

  const Eigen::Index g = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd values(mc_samples, g);
  for (Eigen::Index j = 0; j < g; ++j) {
    const double damp = std::exp(-squared_norm(grid_[j]));
    for (long s = 0; s < mc_samples; ++s) {
      values(s, j) = damp * example32_f({grid_[j].x - shifts_[s].x, grid_[j].y - shifts_[s].y});
    }
  }
  const double count = static_cast<double>(mc_samples);
  cov_ = values.transpose() * values / count;
  cov_se_.resize(g, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = 0; j < g; ++j) {
      const Eigen::ArrayXd prod = values.col(i).array() * values.col(j).array();
      const double var = (prod - cov_(i, j)).square().sum() / (count - 1.0);
      cov_se_(i, j) = std::sqrt(var / count);
    }
  }
}

double Example32Field::covariance(Point2 u, Point2 v) const {
  const double damp = std::exp(-squared_norm(u) - squared_norm(v));
  double total = 0.0;
  for (Point2 z : shifts_) {
    total += example32_f({u.x - z.x, u.y - z.y}) * example32_f({v.x - z.x, v.y - z.y});
  }
  return damp * total / static_cast<double>(shifts_.size());
}

CovarianceOracle Example32Field::oracle() const {
  auto self = std::make_shared<const Example32Field>(*this);
  return {[self](Point2 u, Point2 v) { return self->covariance(u, v); }};
}

Example32Field example32_field(std::vector<Point2> grid, long mc_samples, std::uint64_t seed) {
  return Example32Field(std::move(grid), mc_samples, seed);
}

}  // namespace slt

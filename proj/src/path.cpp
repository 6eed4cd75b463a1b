#include "slt/path.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "slt/rng.hpp"

namespace slt {

PlanarPath::PlanarPath(std::vector<double> xs, std::vector<double> ys, std::uint64_t seed)
    : xs_(std::move(xs)), ys_(std::move(ys)), seed_(seed) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw std::invalid_argument("PlanarPath: need matching coordinate arrays with at least 2 nodes");
  }
  if (xs_.front() != 0.0 || ys_.front() != 0.0) {
    throw std::invalid_argument("PlanarPath: path must start at the origin");
  }
}

PlanarPath sample_path(int n_steps, std::uint64_t seed) {
  if (n_steps < 1) {
    throw std::invalid_argument("sample_path: n_steps must be >= 1");
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(n_steps)));

  std::vector<double> xs(n_steps + 1), ys(n_steps + 1);
  xs[0] = 0.0;
  ys[0] = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    const double dx = normal(engine);
    const double dy = normal(engine);
    xs[i + 1] = xs[i] + dx;
    ys[i + 1] = ys[i] + dy;
  }
  return PlanarPath(std::move(xs), std::move(ys), seed);
}

PlanarPath ensemble_path(int n_steps, std::uint64_t root_seed, std::uint64_t index) {
  return sample_path(n_steps, substream_seed(family_seed(root_seed, kPathStream), index));
}

Point2 path_value(const PlanarPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("path_value: t must lie in [0, 1]");
  }
  const int n = path.n_steps();
  const double scaled = t * n;
  int i = static_cast<int>(std::floor(scaled));
  if (i >= n) {
    return path.point(n);
  }
  const double frac = scaled - i;
  if (frac == 0.0) {
    return path.point(i);
  }
  const Point2 a = path.point(i);
  const Point2 b = path.point(i + 1);
  return {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
}

}  // namespace slt

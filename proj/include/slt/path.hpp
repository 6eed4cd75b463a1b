#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double squared_norm(Point2 p) noexcept { return p.x * p.x + p.y * p.y; }

/// Discretized planar Wiener trajectory on the uniform grid t_i = i / n.
///
/// Coordinates are stored as two contiguous arrays so the kernel rows can
/// stream them. Immutable once built.
class PlanarPath {
 public:
  PlanarPath(std::vector<double> xs, std::vector<double> ys, std::uint64_t seed);

  int n_steps() const noexcept { return static_cast<int>(xs_.size()) - 1; }
  std::uint64_t seed() const noexcept { return seed_; }
  Point2 point(int i) const { return {xs_.at(i), ys_.at(i)}; }
  double time(int i) const noexcept { return static_cast<double>(i) / n_steps(); }

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::uint64_t seed_;
};

/// Increments are independent N(0, 1/n) per coordinate; (n_steps, seed)
/// fully determines the output.
PlanarPath sample_path(int n_steps, std::uint64_t seed);

/// Path `index` of the ensemble rooted at `root_seed`.
PlanarPath ensemble_path(int n_steps, std::uint64_t root_seed, std::uint64_t index);

/// Linear interpolation between grid nodes; exact at t = i/n.
Point2 path_value(const PlanarPath& path, double t);

}  // namespace slt

#include "slt/image.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "slt/errors.hpp"
#include "slt/weights.hpp"

namespace slt {

namespace {

double det_power(const Diffeomorphism& f, Point2 u, int k) {
  const double d = std::abs(f.jac_det(u));
  if (!(d >= f.det_lower_bound) || d == 0.0) {
    std::ostringstream msg;
    msg << "|det F'| = " << d << " below declared bound " << f.det_lower_bound << " at u=(" << u.x
        << ", " << u.y << ")";
    throw SingularityError(msg.str());
  }
  return std::pow(d, -(k - 1));
}

}  // namespace

double fF_kernel(std::span<const Point2> v_list, double epsilon, const Diffeomorphism& f) {
  const int k = static_cast<int>(v_list.size());
  if (k < 2) throw std::invalid_argument("fF_kernel: need k >= 2 points");
  if (!(epsilon > 0.0)) throw std::invalid_argument("fF_kernel: epsilon must be > 0");
  Point2 prev = f.inverse(v_list[0]);
  double value = det_power(f, prev, k);
  for (int i = 1; i < k; ++i) {
    const Point2 next = f.inverse(v_list[i]);
    value *= gauss_kernel({next.x - prev.x, next.y - prev.y}, epsilon);
    prev = next;
  }
  return value;
}

ImageSltResult image_slt(const PlanarPath& path, const Diffeomorphism& f, double epsilon, int k,
                         const KernelOptions& options) {
  if (k < 1) throw std::invalid_argument("image_slt: k must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("image_slt: epsilon must be > 0");
  check_budget(path.n_steps(), k, options);

  // (a) image side: pull the image points F(w) back through F^-1 and weight
  // by the first point's Jacobian, as f^F_eps prescribes.
  const int n = path.n_steps();
  std::vector<double> ux(n), uy(n);
  Eigen::MatrixXd first_weight(n, 1);
  for (int i = 0; i < n; ++i) {
    const Point2 v = f.forward(path.point(i + 1));
    const Point2 u = f.inverse(v);
    ux[i] = u.x;
    uy[i] = u.y;
    first_weight(i, 0) = det_power(f, u, k);
  }
  const Eigen::MatrixXd image_levels = chain_levels(ux, uy, first_weight, epsilon, k, options.impl);

  ImageSltResult out;
  out.image_value = image_levels(k - 1, 0);
  // (b) weighted side on the original path.
  out.weighted_value = simplex_functional(path, jacobian_weight(f, k), epsilon, k, options).value;
  const double scale = std::max(std::abs(out.image_value), std::abs(out.weighted_value));
  out.residual = scale == 0.0 ? 0.0 : std::abs(out.image_value - out.weighted_value) / scale;
  return out;
}

std::vector<RenormalizedEstimate> renorm_image(const EnsembleConfig& config, const Diffeomorphism& f,
                                               std::span<const double> eps_levels, int k) {
  return estimate_renormalized(config, jacobian_weight(f, k), eps_levels, k);
}

RenormalizedEstimate renorm_image(const EnsembleConfig& config, const Diffeomorphism& f,
                                  double epsilon, int k) {
  return renorm_image(config, f, std::span(&epsilon, 1), k).front();
}

TestFunction constant_test_function(double value) {
  return {"constant", [value](std::span<const Point2>) { return value; }, 1e300};
}

TestFunction bump_test_function(Point2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump_test_function: radius must be > 0");
  auto bump = [center, radius](Point2 v) {
    const double q = squared_norm({v.x - center.x, v.y - center.y}) / (radius * radius);
    return q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
  };
  return {"bump",
          [bump](std::span<const Point2> vs) {
            double p = 1.0;
            for (Point2 v : vs) p *= bump(v);
            return p;
          },
          radius};
}

namespace {

struct Node {
  double x;
  double w;
};

// Composite 16-point Gauss-Legendre rule on [-r, r].
std::vector<Node> composite_rule(double r, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  std::vector<Node> nodes;
  const double width = 2.0 * r / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -r + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      nodes.push_back({mid - half * abscissa[i], half * weights[i]});
      nodes.push_back({mid + half * abscissa[i], half * weights[i]});
    }
  }
  return nodes;
}

}  // namespace

std::vector<LemmaDeltaRow> lemma_delta_check(const TestFunction& phi, Point2 v_k, const Diffeomorphism& f,
                                             int k, std::span<const double> eps_levels,
                                             const QuadratureConfig& quad) {
  if (k != 2 && k != 3) throw std::invalid_argument("lemma_delta_check: k must be 2 or 3");
  if (eps_levels.empty()) throw std::invalid_argument("lemma_delta_check: need epsilon levels");
  if (!(quad.mass_tolerance > 0.0 && quad.mass_tolerance < 1.0)) {
    throw std::invalid_argument("lemma_delta_check: mass_tolerance must be in (0, 1)");
  }
  const double required = std::sqrt(2.0 * std::log(1.0 / quad.mass_tolerance));
  if (quad.radius != 0.0 && quad.radius < required) {
    std::ostringstream msg;
    msg << "truncation radius " << quad.radius << " leaves more than " << quad.mass_tolerance
        << " Gaussian mass outside; need >= " << required;
    throw ConfigError({msg.str()});
  }
  const double radius = quad.radius != 0.0 ? quad.radius : required;
  const Point2 anchor = f.inverse(v_k);
  const int points = k - 1;
  const std::vector<Point2> target_args(points, v_k);

  std::vector<LemmaDeltaRow> rows;
  for (double eps : eps_levels) {
    if (!(eps > 0.0)) throw std::invalid_argument("lemma_delta_check: epsilon must be > 0");
    const double root = std::sqrt(eps);
    // Panels no wider than the support radius of phi (in v units, ignoring F's stretch).
    const int panels = std::max(quad.panels, static_cast<int>(std::ceil(2.0 * radius * root / phi.support_radius)));
    const std::vector<Node> rule = composite_rule(radius, panels);
    const long m = static_cast<long>(rule.size());
    const int dims = 2 * points;
    long total_nodes = 1;
    for (int d = 0; d < dims; ++d) total_nodes *= m;

    // Outer index = first dimension; per-slice partial sums reduce in order.
    std::vector<double> slices(m, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long outer = 0; outer < m; ++outer) {
      const long inner_count = total_nodes / m;
      std::array<Point2, 3> u{};
      std::array<Point2, 4> v{};
      double acc = 0.0;
      for (long inner = 0; inner < inner_count; ++inner) {
        long code = inner;
        std::array<int, 4> idx{};
        idx[0] = static_cast<int>(outer);
        for (int d = 1; d < dims; ++d) {
          idx[d] = static_cast<int>(code % m);
          code /= m;
        }
        double weight = 1.0;
        for (int d = 0; d < dims; ++d) weight *= rule[idx[d]].w;
        // Telescoping: u_{k-1} = anchor + root z_{k-1}, u_i = u_{i+1} + root z_i.
        Point2 next = anchor;
        for (int i = points - 1; i >= 0; --i) {
          const Point2 z{rule[idx[2 * i]].x, rule[idx[2 * i + 1]].x};
          u[i] = {next.x + root * z.x, next.y + root * z.y};
          next = u[i];
        }
        double jac = std::pow(eps, points);
        for (int i = 0; i < points; ++i) {
          v[i] = f.forward(u[i]);
          jac *= std::abs(f.jac_det(u[i]));
        }
        v[points] = v_k;
        const double integrand = phi.phi(std::span<const Point2>(v.data(), points)) *
                                 fF_kernel(std::span<const Point2>(v.data(), points + 1), eps, f) * jac;
        acc += weight * integrand;
      }
      slices[outer] = acc;
    }
    LemmaDeltaRow row;
    row.epsilon = eps;
    row.integral = pairwise_sum(slices);
    row.target = phi.phi(target_args);
    row.deviation = std::abs(row.integral - row.target);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace slt

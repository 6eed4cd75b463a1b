#include "slt/diffeo.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "slt/errors.hpp"

namespace slt {

Point2 fixed_point_inverse(const std::function<Point2(Point2)>& forward, Point2 v, double damping,
                           double tolerance, int max_iter) {
  Point2 u = v;
  double best = std::numeric_limits<double>::infinity();
  Point2 best_u = u;
  int stalls = 0;
  for (int it = 0; it < max_iter; ++it) {
    const Point2 f = forward(u);
    const Point2 r{v.x - f.x, v.y - f.y};
    const double res = std::sqrt(squared_norm(r));
    if (res < best) {
      best = res;
      best_u = u;
      stalls = 0;
    } else if (++stalls >= 3) {
      break;
    }
    if (res == 0.0) break;
    u = {u.x + damping * r.x, u.y + damping * r.y};
  }
  if (best > tolerance * (1.0 + std::sqrt(squared_norm(v)))) {
    std::ostringstream msg;
    msg << "fixed_point_inverse: residual " << best << " above tolerance at v=(" << v.x << ", "
        << v.y << ")";
    throw std::runtime_error(msg.str());
  }
  return best_u;
}

Diffeomorphism identity_map() {
  Diffeomorphism f;
  f.name = "identity";
  f.forward = [](Point2 u) { return u; };
  f.inverse = [](Point2 v) { return v; };
  f.jac_det = [](Point2) { return 1.0; };
  f.det_lower_bound = 1.0;
  f.affine = true;
  return f;
}

Diffeomorphism affine_map(std::string name, const Eigen::Matrix2d& a, const Eigen::Vector2d& b) {
  const double det = a.determinant();
  if (det == 0.0) throw SingularityError("affine_map: matrix is singular");
  const Eigen::Matrix2d a_inv = a.inverse();
  Diffeomorphism f;
  f.name = std::move(name);
  f.forward = [a, b](Point2 u) {
    const Eigen::Vector2d r = a * Eigen::Vector2d(u.x, u.y) + b;
    return Point2{r[0], r[1]};
  };
  f.inverse = [a_inv, b](Point2 v) {
    const Eigen::Vector2d r = a_inv * (Eigen::Vector2d(v.x, v.y) - b);
    return Point2{r[0], r[1]};
  };
  f.jac_det = [det](Point2) { return det; };
  f.det_lower_bound = std::abs(det);
  f.affine = true;
  return f;
}

Diffeomorphism swirl_map(double alpha, double omega) {
  if (!(std::abs(alpha * omega) < 1.0)) {
    throw std::invalid_argument("swirl_map: need |alpha * omega| < 1");
  }
  Diffeomorphism f;
  std::ostringstream name;
  name << "swirl(" << alpha << "," << omega << ")";
  f.name = name.str();
  f.forward = [alpha, omega](Point2 u) {
    return Point2{u.x + alpha * std::sin(omega * u.y), u.y + alpha * std::sin(omega * u.x)};
  };
  auto forward = f.forward;
  f.inverse = [forward](Point2 v) { return fixed_point_inverse(forward, v); };
  f.jac_det = [alpha, omega](Point2 u) {
    return 1.0 - alpha * alpha * omega * omega * std::cos(omega * u.x) * std::cos(omega * u.y);
  };
  f.det_lower_bound = 1.0 - alpha * alpha * omega * omega;
  return f;
}

Diffeomorphism tanh_map(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("tanh_map: alpha must be >= 0");
  Diffeomorphism f;
  std::ostringstream name;
  name << "tanh(" << alpha << ")";
  f.name = name.str();
  f.forward = [alpha](Point2 u) {
    return Point2{u.x + alpha * std::tanh(u.x), u.y + alpha * std::tanh(u.y)};
  };
  auto forward = f.forward;
  // Contraction factor alpha / (1 + alpha) with damping 1 / (1 + alpha).
  f.inverse = [forward, alpha](Point2 v) { return fixed_point_inverse(forward, v, 1.0 / (1.0 + alpha)); };
  f.jac_det = [alpha](Point2 u) {
    const double sx = 1.0 / std::cosh(u.x);
    const double sy = 1.0 / std::cosh(u.y);
    return (1.0 + alpha * sx * sx) * (1.0 + alpha * sy * sy);
  };
  f.det_lower_bound = 1.0;
  return f;
}

std::vector<std::string> builtin_names() {
  return {"identity", "scale2", "affine", "swirl", "tanh"};
}

Diffeomorphism builtin_diffeomorphism(const std::string& name) {
  if (name == "identity") return identity_map();
  if (name == "scale2") return affine_map("scale2", 2.0 * Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
  if (name == "affine") {
    Eigen::Matrix2d a;
    a << 1.5, 0.3, -0.2, 0.8;
    return affine_map("affine", a, Eigen::Vector2d(0.1, -0.2));
  }
  if (name == "swirl") {
    Diffeomorphism f = swirl_map(0.4, 1.0);
    f.name = name;
    return f;
  }
  if (name == "tanh") {
    Diffeomorphism f = tanh_map(0.5);
    f.name = name;
    return f;
  }
  throw std::invalid_argument("unknown diffeomorphism '" + name + "'");
}

}  // namespace slt

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slt/path.hpp"

namespace slt {

/// Planar diffeomorphism with inverse and Jacobian determinant.
/// `det_lower_bound` is the declared floor of |det F'| on the working region.
struct Diffeomorphism {
  std::string name;
  std::function<Point2(Point2)> forward;
  std::function<Point2(Point2)> inverse;
  std::function<double(Point2)> jac_det;
  double det_lower_bound = 0.0;
  bool affine = false;
};

Diffeomorphism identity_map();

/// F(u) = A u + b; throws SingularityError if det A == 0.
Diffeomorphism affine_map(std::string name, const Eigen::Matrix2d& a, const Eigen::Vector2d& b);

/// F(u) = u + alpha * (sin(omega u_y), sin(omega u_x)).
/// det F' = 1 - alpha^2 omega^2 cos(omega u_x) cos(omega u_y) >= 1 - (alpha omega)^2,
/// so alpha * omega < 1 is required. Inverse by damped fixed-point iteration.
Diffeomorphism swirl_map(double alpha, double omega = 1.0);

/// F(u) = u + alpha * (tanh(u_x), tanh(u_y)); det F' >= 1 for alpha >= 0.
Diffeomorphism tanh_map(double alpha);

/// Names accepted by builtin_diffeomorphism: identity, scale2, affine, swirl, tanh.
std::vector<std::string> builtin_names();
Diffeomorphism builtin_diffeomorphism(const std::string& name);

/// Solves F(u) = v by u <- u + damping * (v - F(u)), starting from v, until
/// the residual stops shrinking. Throws std::runtime_error if the final
/// residual exceeds `tolerance`.
Point2 fixed_point_inverse(const std::function<Point2(Point2)>& forward, Point2 v,
                           double damping = 1.0, double tolerance = 1e-12, int max_iter = 500);

}  // namespace slt

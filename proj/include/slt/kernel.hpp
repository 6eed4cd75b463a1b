#pragma once

#include <span>

#include <Eigen/Dense>

#include "slt/path.hpp"

namespace slt {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Heat kernel f_eps(y) = exp(-|y|^2 / (2 eps)) / (2 pi eps).
double gauss_kernel(Point2 y, double epsilon);

enum class KernelImpl {
  kVectorized,  // Eigen array rows, SIMD exp
  kReference,   // scalar std::exp loops, kept as the test reference
};

/// Ordered-simplex chain sums on a node set.
///
/// With nodes z_1..z_n (grid spacing 1/n) and weight columns rho_w, computes
/// for every level l = 1..k
///
///     T_l[w] = n^-l * sum_{i_1 < ... < i_l} rho_w(z_{i_1}) prod f_eps(z_{i_{j+1}} - z_{i_j})
///
/// through the recursion A_1 = rho, A_{m+1}(j) = sum_{i<j} A_m(i) f_eps(z_j - z_i).
/// One kernel row per node serves every level and every weight column, so
/// the cost is n^2/2 exponentials plus (k-1) W n^2/2 multiply-adds.
///
/// Returns a k x W matrix whose row l-1 holds T_l.
Eigen::MatrixXd chain_levels(std::span<const double> xs, std::span<const double> ys,
                             const Eigen::MatrixXd& node_weights, double epsilon, int k,
                             KernelImpl impl = KernelImpl::kVectorized);

/// Multiply-adds per weight column chain_levels performs for n nodes at
/// multiplicity k; the resource guard is expressed in these units.
double chain_cost(long n_nodes, int k) noexcept;

}  // namespace slt

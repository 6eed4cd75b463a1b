#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slt/kernel.hpp"
#include "slt/path.hpp"
#include "slt/weight.hpp"

namespace slt {

struct KernelOptions {
  KernelImpl impl = KernelImpl::kVectorized;
  // Upper bound on chain_cost per path and epsilon level.
  double max_work = 4.0e9;
};

struct SimplexEstimate {
  double value = 0.0;
  int k = 1;
  double epsilon = 1.0;
  int n_steps = 1;
};

/// Riemann sum of the ordered-simplex integral
/// int_{Delta_k} rho(w(t_1)) prod f_eps(w(t_{i+1}) - w(t_i)) dt
/// over grid nodes t_i = i/n, i = 1..n, with strict ordering i_1 < ... < i_k.
SimplexEstimate simplex_functional(const PlanarPath& path, const ScalarWeight& rho,
                                   double epsilon, int k, const KernelOptions& options = {});

/// T_{eps,1..k} for every weight column at once. Row l-1, column w.
Eigen::MatrixXd simplex_levels(const PlanarPath& path, const Eigen::MatrixXd& node_weights,
                               double epsilon, int k, const KernelOptions& options = {});

/// rho evaluated at grid nodes t_i = i/n, i = 1..n.
Eigen::VectorXd node_values(const PlanarPath& path, const ScalarWeight& rho);

/// sum_{l=1..k} C(k-1, l-1) (ln(eps) / 2pi)^{k-l} T_{eps,l}
double dynkin_renormalize(std::span<const double> t_values, double epsilon, int k);

/// E int_{Delta_2} f_eps(w(t_2) - w(t_1)) dt = [(1+eps) ln((1+eps)/eps) - 1] / 2pi.
double analytic_E_T2(double epsilon);
/// analytic_E_T2(eps) + ln(eps)/2pi; tends to -1/2pi as eps -> 0.
double analytic_E_renorm2(double epsilon);

/// Warning text when the grid under-resolves the kernel, i.e.
/// 1/n_steps > epsilon * ratio (ratio defaults to 1/10).
std::optional<std::string> resolution_warning(int n_steps, double epsilon, double ratio = 0.1);

/// Throws ResourceError when the per-path work for (n_steps, k) exceeds the budget.
void check_budget(int n_steps, int k, const KernelOptions& options);

}  // namespace slt

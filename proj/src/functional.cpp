#include "slt/functional.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slt/errors.hpp"

namespace slt {

void check_budget(int n_steps, int k, const KernelOptions& options) {
  const double work = chain_cost(n_steps, k);
  if (work > options.max_work) {
    std::ostringstream msg;
    msg << "simplex sum needs " << work << " multiply-adds per path (n_steps=" << n_steps
        << ", k=" << k << "), budget is " << options.max_work;
    throw ResourceError(msg.str());
  }
}

Eigen::VectorXd node_values(const PlanarPath& path, const ScalarWeight& rho) {
  const int n = path.n_steps();
  Eigen::VectorXd values(n);
  for (int i = 0; i < n; ++i) values[i] = rho(path.point(i + 1));
  return values;
}

Eigen::MatrixXd simplex_levels(const PlanarPath& path, const Eigen::MatrixXd& node_weights,
                               double epsilon, int k, const KernelOptions& options) {
  if (k < 1) throw std::invalid_argument("simplex_functional: k must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("simplex_functional: epsilon must be > 0");
  check_budget(path.n_steps(), k, options);
  return chain_levels(path.xs().subspan(1), path.ys().subspan(1), node_weights, epsilon, k,
                      options.impl);
}

SimplexEstimate simplex_functional(const PlanarPath& path, const ScalarWeight& rho,
                                   double epsilon, int k, const KernelOptions& options) {
  if (k < 1) throw std::invalid_argument("simplex_functional: k must be >= 1");
  const Eigen::MatrixXd levels = simplex_levels(path, node_values(path, rho), epsilon, k, options);
  return {levels(k - 1, 0), k, epsilon, path.n_steps()};
}

double dynkin_renormalize(std::span<const double> t_values, double epsilon, int k) {
  if (k < 1) throw std::invalid_argument("dynkin_renormalize: k must be >= 1");
  if (t_values.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("dynkin_renormalize: need exactly k values T_{eps,1..k}");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("dynkin_renormalize: epsilon must be > 0");
  const double a = std::log(epsilon) / kTwoPi;
  double binom = 1.0;  // C(k-1, 0)
  double total = 0.0;
  for (int l = 1; l <= k; ++l) {
    total += binom * std::pow(a, k - l) * t_values[l - 1];
    binom = binom * (k - l) / l;
  }
  return total;
}

double analytic_E_T2(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("analytic_E_T2: epsilon must be > 0");
  return ((1.0 + epsilon) * std::log1p(1.0 / epsilon) - 1.0) / kTwoPi;
}

double analytic_E_renorm2(double epsilon) {
  return analytic_E_T2(epsilon) + std::log(epsilon) / kTwoPi;
}

std::optional<std::string> resolution_warning(int n_steps, double epsilon, double ratio) {
  const double spacing = 1.0 / n_steps;
  if (spacing > epsilon * ratio) {
    std::ostringstream msg;
    msg << "grid spacing 1/" << n_steps << " exceeds " << ratio << " * eps (eps=" << epsilon
        << "); the Riemann sum under-resolves f_eps";
    return msg.str();
  }
  return std::nullopt;
}

}  // namespace slt

#include "slt/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slt {

double gauss_kernel(Point2 y, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("gauss_kernel: epsilon must be > 0");
  }
  return std::exp(-squared_norm(y) / (2.0 * epsilon)) / (kTwoPi * epsilon);
}

double chain_cost(long n_nodes, int k) noexcept {
  if (k <= 1) return 0.0;
  const double n = static_cast<double>(n_nodes);
  return 0.5 * n * (n - 1.0) * (k - 1);
}

namespace {

void check_args(std::span<const double> xs, std::span<const double> ys,
                const Eigen::MatrixXd& node_weights, double epsilon, int k) {
  if (k < 1) throw std::invalid_argument("chain_levels: k must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("chain_levels: epsilon must be > 0");
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("chain_levels: coordinate arrays must match and be nonempty");
  }
  if (static_cast<std::size_t>(node_weights.rows()) != xs.size() || node_weights.cols() < 1) {
    throw std::invalid_argument("chain_levels: weight matrix must be n_nodes x W with W >= 1");
  }
}

Eigen::MatrixXd collect(const std::vector<Eigen::MatrixXd>& acc, long n) {
  const int k = static_cast<int>(acc.size());
  Eigen::MatrixXd out(k, acc.front().cols());
  double scale = 1.0;
  for (int l = 0; l < k; ++l) {
    scale /= static_cast<double>(n);
    for (Eigen::Index w = 0; w < out.cols(); ++w) {
      out(l, w) = acc[l].col(w).sum() * scale;
    }
  }
  return out;
}

Eigen::MatrixXd chain_vectorized(std::span<const double> xs, std::span<const double> ys,
                                 const Eigen::MatrixXd& rho, double epsilon, int k) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index width = rho.cols();
  const Eigen::Map<const Eigen::ArrayXd> x(xs.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> y(ys.data(), n);
  const double decay = 1.0 / (2.0 * epsilon);
  const double peak = 1.0 / (kTwoPi * epsilon);

  std::vector<Eigen::MatrixXd> acc(k, Eigen::MatrixXd::Zero(n, width));
  acc[0] = rho;
  if (k == 1) return collect(acc, n);

  Eigen::ArrayXd row(n);
  for (Eigen::Index j = 1; j < n; ++j) {
    auto head = row.head(j);
    head = (-decay * ((x.head(j) - x[j]).square() + (y.head(j) - y[j]).square())).exp();
    for (int m = 1; m < k; ++m) {
      for (Eigen::Index w = 0; w < width; ++w) {
        acc[m](j, w) = peak * (acc[m - 1].col(w).head(j).array() * head).sum();
      }
    }
  }
  return collect(acc, n);
}

Eigen::MatrixXd chain_reference(std::span<const double> xs, std::span<const double> ys,
                                const Eigen::MatrixXd& rho, double epsilon, int k) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index width = rho.cols();
  std::vector<Eigen::MatrixXd> acc(k, Eigen::MatrixXd::Zero(n, width));
  acc[0] = rho;
  std::vector<double> row(n);
  for (Eigen::Index j = 1; j < n && k > 1; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      row[i] = gauss_kernel({xs[j] - xs[i], ys[j] - ys[i]}, epsilon);
    }
    for (int m = 1; m < k; ++m) {
      for (Eigen::Index w = 0; w < width; ++w) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < j; ++i) s += acc[m - 1](i, w) * row[i];
        acc[m](j, w) = s;
      }
    }
  }
  return collect(acc, n);
}

}  // namespace

Eigen::MatrixXd chain_levels(std::span<const double> xs, std::span<const double> ys,
                             const Eigen::MatrixXd& node_weights, double epsilon, int k,
                             KernelImpl impl) {
  check_args(xs, ys, node_weights, epsilon, k);
  return impl == KernelImpl::kVectorized ? chain_vectorized(xs, ys, node_weights, epsilon, k)
                                         : chain_reference(xs, ys, node_weights, epsilon, k);
}

}  // namespace slt

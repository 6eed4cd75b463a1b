#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double heat_kernel(double dx, double dy, double eps) {
  return std::exp(-(dx * dx + dy * dy) / (2.0 * eps)) / (kTwoPi * eps);
}

double brute_simplex(const slt::PlanarPath& path, const std::vector<double>& rho, double eps, int k) {
  const int n = path.n_steps();
  auto f = [&](int i, int j) {
    const slt::Point2 a = path.point(i), b = path.point(j);
    return heat_kernel(b.x - a.x, b.y - a.y, eps);
  };
  long double total = 0.0L;
  switch (k) {
    case 1:
      for (int a = 1; a <= n; ++a) total += rho[a - 1];
      break;
    case 2:
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) total += rho[a - 1] * f(a, b);
      break;
    case 3:
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          for (int c = b + 1; c <= n; ++c) total += rho[a - 1] * f(a, b) * f(b, c);
      break;
    case 4:
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          for (int c = b + 1; c <= n; ++c)
            for (int d = c + 1; d <= n; ++d) total += rho[a - 1] * f(a, b) * f(b, c) * f(c, d);
      break;
    default:
      throw std::invalid_argument("brute_simplex: k in 1..4");
  }
  return static_cast<double>(total / std::pow(static_cast<long double>(n), k));
}

double expected_t2(double eps) { return ((1.0 + eps) * std::log((1.0 + eps) / eps) - 1.0) / kTwoPi; }

double expected_renorm2(double eps) { return expected_t2(eps) + std::log(eps) / kTwoPi; }

double example32_f_simpson(double r2) {
  // x = ln t on [ln(r2 / 2000), 0]; the integrand exp(-r2 / 2e^x) / 2pi is a smooth step.
  const double a = std::log(r2 / 2000.0), b = 0.0;
  const int m = 200000;
  const double h = (b - a) / m;
  auto g = [r2](double x) { return std::exp(-r2 / (2.0 * std::exp(x))); };
  double s = g(a) + g(b);
  for (int i = 1; i < m; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0 / kTwoPi;
}

}  // namespace oracle

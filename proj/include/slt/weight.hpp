#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slt/path.hpp"

namespace slt {

/// Real weight rho: R^2 -> R, optionally with a declared sup norm.
class ScalarWeight {
 public:
  using Evaluator = std::function<double(Point2)>;

  explicit ScalarWeight(Evaluator evaluator, std::optional<double> sup_norm = std::nullopt);

  static ScalarWeight constant(double value);

  /// Throws std::invalid_argument if the value breaks the declared sup norm.
  double operator()(Point2 u) const;

  const std::optional<double>& sup_norm() const noexcept { return sup_norm_; }
  /// Set only for weights built with constant(); lets callers attach oracles.
  const std::optional<double>& constant_value() const noexcept { return constant_; }

 private:
  Evaluator evaluator_;
  std::optional<double> sup_norm_;
  std::optional<double> constant_;
};

/// H-valued weight through finitely many coordinates u -> (rho(u), e_m),
/// m = 1..M, plus a declared bound on sum_{m>M} sup_u (rho(u), e_m)^2.
struct HilbertWeight {
  std::vector<ScalarWeight> coords;
  double tail_bound = 0.0;
  std::string basis_label;

  int dimension() const noexcept { return static_cast<int>(coords.size()); }
};

/// (u, v) -> (rho(u), rho(v)).
struct CovarianceOracle {
  std::function<double(Point2, Point2)> evaluator;

  double operator()(Point2 u, Point2 v) const { return evaluator(u, v); }
};

}  // namespace slt

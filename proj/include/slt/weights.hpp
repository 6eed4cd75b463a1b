#pragma once

#include <span>
#include <vector>

#include "slt/diffeo.hpp"
#include "slt/ensemble.hpp"
#include "slt/weight.hpp"

namespace slt {

/// Finite-grid view of the coordinate-sup summability condition.
struct ConditionStarProfile {
  std::vector<double> sups;          // s_m = max_grid (rho(u), e_m)^2
  std::vector<double> partial_sums;  // sum_{m<=j} s_m, nondecreasing
  double tail_bound = 0.0;           // declared, copied from the weight
};

ConditionStarProfile condition_star_profile(const HilbertWeight& weight, std::span<const Point2> grid);

/// u -> 1 / |det F'(u)|^{k-1}. Evaluation throws SingularityError naming u
/// where det F'(u) vanishes.
ScalarWeight jacobian_weight(const Diffeomorphism& f, int k);

struct HilbertEstimate {
  std::vector<MCStats> coords;             // renormalized functional of (rho, e_m)
  MCStats norm_sq;                         // sum_{m<=M} of the squared coordinates, per path
  std::vector<double> norm_sq_partial;     // sample mean of sum_{m<=j}, j = 1..M
  double tail_bound = 0.0;
};

/// Runs the renormalized pipeline once per coordinate on one shared path
/// ensemble.
HilbertEstimate hilbert_slt(const EnsembleConfig& config, const HilbertWeight& weight,
                            double epsilon, int k);

}  // namespace slt

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "slt/diffeo.hpp"
#include "slt/ensemble.hpp"
#include "slt/functional.hpp"

namespace slt {

/// f^F_eps(v_1..v_k) = |det F'(F^-1(v_1))|^-(k-1) prod_{i<k} f_eps(F^-1(v_{i+1}) - F^-1(v_i)).
/// Throws SingularityError when |det F'| at F^-1(v_1) is below F.det_lower_bound.
double fF_kernel(std::span<const Point2> v_list, double epsilon, const Diffeomorphism& f);

struct ImageSltResult {
  double image_value = 0.0;     // Riemann sum of f^F_eps over the image path F(w)
  double weighted_value = 0.0;  // Riemann sum on w with rho = 1/|det F'|^(k-1)
  double residual = 0.0;        // relative difference
};

/// Both sides of the substitution identity T^{F(w)}_{eps,k} = T^w_{eps,k}(rho).
ImageSltResult image_slt(const PlanarPath& path, const Diffeomorphism& f, double epsilon, int k,
                         const KernelOptions& options = {});

/// Renormalized image functional: the Jacobian weight for multiplicity k is
/// used at every level l of the renormalization sum.
RenormalizedEstimate renorm_image(const EnsembleConfig& config, const Diffeomorphism& f,
                                  double epsilon, int k);
std::vector<RenormalizedEstimate> renorm_image(const EnsembleConfig& config, const Diffeomorphism& f,
                                               std::span<const double> eps_levels, int k);

/// Bounded continuous phi on (R^2)^(k-1), with a declared support radius
/// used to size the quadrature panels.
struct TestFunction {
  std::string name;
  std::function<double(std::span<const Point2>)> phi;
  double support_radius = 1.0;
};

TestFunction constant_test_function(double value);
/// prod_i b(v_i) with b(v) = exp(1 - 1 / (1 - |v - c|^2 / r^2)) inside |v - c| < r.
TestFunction bump_test_function(Point2 center, double radius);

struct QuadratureConfig {
  int panels = 2;            // composite panels per dimension (raised if too coarse for phi)
  double mass_tolerance = 1e-8;
  double radius = 0.0;       // box half-width in sqrt(eps) units; 0 picks the minimum
};

struct LemmaDeltaRow {
  double epsilon = 0.0;
  double integral = 0.0;   // int phi(v_1..v_{k-1}) f^F_eps(v_1..v_k) dv
  double target = 0.0;     // phi(v_k, ..., v_k)
  double deviation = 0.0;  // |integral - target|
};

/// Quadrature of phi * f^F_eps for k in {2, 3}. The integral is taken in
/// telescoped variables v_i = F(u_i), u_{k-1} = F^-1(v_k) + sqrt(eps) z_{k-1},
/// u_i = u_{i+1} + sqrt(eps) z_i, on the box |z_i|_inf <= R with composite
/// 16-point Gauss-Legendre panels. R = sqrt(2 ln(1/mass_tolerance)) puts less
/// than mass_tolerance Gaussian mass outside each box; a smaller configured
/// radius is a ConfigError.
std::vector<LemmaDeltaRow> lemma_delta_check(const TestFunction& phi, Point2 v_k, const Diffeomorphism& f,
                                             int k, std::span<const double> eps_levels,
                                             const QuadratureConfig& quad = {});

}  // namespace slt

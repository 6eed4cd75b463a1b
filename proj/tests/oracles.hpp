#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They share no code with the library beyond the path type.

#include <vector>

#include "slt/path.hpp"

namespace oracle {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

double heat_kernel(double dx, double dy, double eps);

/// Nested loops over i_1 < ... < i_k, nodes 1..n, factor n^-k; k in 1..4.
double brute_simplex(const slt::PlanarPath& path, const std::vector<double>& rho, double eps, int k);

/// Closed forms, written out independently.
double expected_t2(double eps);
double expected_renorm2(double eps);

/// int_0^1 exp(-r2 / 2t) / (2 pi t) dt by composite Simpson in log time.
double example32_f_simpson(double r2);

}  // namespace oracle

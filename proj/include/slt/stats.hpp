#pragma once

#include <span>

namespace slt {

/// Sample summary of a Monte Carlo functional.
struct MCStats {
  double mean = 0.0;
  double variance = 0.0;   // unbiased (n - 1)
  double std_error = 0.0;  // sqrt(variance / n_paths)
  double m1 = 0.0;         // mean |X|
  double m2 = 0.0;         // mean X^2
  double m4 = 0.0;         // mean X^4
  long n_paths = 0;
};

/// Fixed-order pairwise summation; the result depends only on the input
/// sequence, never on how it was produced.
double pairwise_sum(std::span<const double> values);

/// Requires at least 2 samples.
MCStats summarize(std::span<const double> samples);

}  // namespace slt

#include "slt/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slt {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MCStats summarize(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("summarize: need at least 2 samples");

  const double count = static_cast<double>(n);
  const double mean = pairwise_sum(samples) / count;

  std::vector<double> centered(n), abs1(n), sq(n), quad(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = samples[i];
    const double d = x - mean;
    centered[i] = d * d;
    abs1[i] = std::abs(x);
    sq[i] = x * x;
    quad[i] = sq[i] * sq[i];
  }

  MCStats s;
  s.n_paths = static_cast<long>(n);
  s.mean = mean;
  s.variance = pairwise_sum(centered) / (count - 1.0);
  s.std_error = std::sqrt(s.variance / count);
  s.m1 = pairwise_sum(abs1) / count;
  s.m2 = pairwise_sum(sq) / count;
  s.m4 = pairwise_sum(quad) / count;
  return s;
}

}  // namespace slt

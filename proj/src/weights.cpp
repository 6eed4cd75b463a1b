#include "slt/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slt/errors.hpp"

namespace slt {

ScalarWeight::ScalarWeight(Evaluator evaluator, std::optional<double> sup_norm)
    : evaluator_(std::move(evaluator)), sup_norm_(sup_norm) {
  if (!evaluator_) throw std::invalid_argument("ScalarWeight: empty evaluator");
  if (sup_norm_ && !(*sup_norm_ >= 0.0)) throw std::invalid_argument("ScalarWeight: sup_norm must be >= 0");
}

ScalarWeight ScalarWeight::constant(double value) {
  ScalarWeight w([value](Point2) { return value; }, std::abs(value));
  w.constant_ = value;
  return w;
}

double ScalarWeight::operator()(Point2 u) const {
  const double v = evaluator_(u);
  if (sup_norm_ && std::abs(v) > *sup_norm_) {
    std::ostringstream msg;
    msg << "weight value " << v << " at (" << u.x << ", " << u.y << ") exceeds declared sup norm "
        << *sup_norm_;
    throw std::invalid_argument(msg.str());
  }
  return v;
}

ConditionStarProfile condition_star_profile(const HilbertWeight& weight, std::span<const Point2> grid) {
  if (grid.empty()) throw std::invalid_argument("condition_star_profile: empty grid");
  if (weight.coords.empty()) throw std::invalid_argument("condition_star_profile: weight has no coordinates");
  if (!(weight.tail_bound >= 0.0)) throw std::invalid_argument("condition_star_profile: negative tail bound");

  ConditionStarProfile profile;
  profile.tail_bound = weight.tail_bound;
  double running = 0.0;
  for (const ScalarWeight& coord : weight.coords) {
    double sup = 0.0;
    for (Point2 u : grid) {
      const double v = coord(u);
      if (!std::isfinite(v)) throw std::invalid_argument("condition_star_profile: non-finite coordinate");
      sup = std::max(sup, v * v);
    }
    profile.sups.push_back(sup);
    running += sup;
    profile.partial_sums.push_back(running);
  }
  return profile;
}

ScalarWeight jacobian_weight(const Diffeomorphism& f, int k) {
  if (k < 1) throw std::invalid_argument("jacobian_weight: k must be >= 1");
  if (!f.jac_det) throw std::invalid_argument("jacobian_weight: diffeomorphism has no Jacobian");
  auto det = f.jac_det;
  return ScalarWeight([det, k](Point2 u) {
    const double d = std::abs(det(u));
    if (!(d > 0.0) || !std::isfinite(d)) {
      std::ostringstream msg;
      msg << "det F' vanishes at u=(" << u.x << ", " << u.y << ")";
      throw SingularityError(msg.str());
    }
    return std::pow(d, -(k - 1));
  });
}

HilbertEstimate hilbert_slt(const EnsembleConfig& config, const HilbertWeight& weight,
                            double epsilon, int k) {
  const int m_coords = weight.dimension();
  if (m_coords == 0) throw std::invalid_argument("hilbert_slt: weight has no coordinates");

  const EnsembleSamples samples = sample_functionals(config, weight.coords, std::span(&epsilon, 1), k);

  HilbertEstimate out;
  out.tail_bound = weight.tail_bound;
  for (int m = 0; m < m_coords; ++m) out.coords.push_back(summarize(samples.renormalized_column(0, m)));

  std::vector<double> norm_sq(samples.n_paths(), 0.0);
  std::vector<double> squares(samples.n_paths());
  double partial = 0.0;
  for (int m = 0; m < m_coords; ++m) {
    for (long p = 0; p < samples.n_paths(); ++p) {
      const double v = samples.renormalized(p, 0, m);
      squares[p] = v * v;
      norm_sq[p] += squares[p];
    }
    partial += pairwise_sum(squares) / static_cast<double>(samples.n_paths());
    out.norm_sq_partial.push_back(partial);
  }
  out.norm_sq = summarize(norm_sq);
  return out;
}

}  // namespace slt

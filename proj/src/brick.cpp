#include "slt/brick.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "slt/errors.hpp"
#include "slt/rng.hpp"

namespace slt {

double Brick::squared_size() const {
  double s = 0.0;
  for (double w : widths) s += w * w;
  return s + (tail == TailRule::kEnvelope ? tail_sq_sum : 0.0);
}

Eigen::MatrixXd FiniteCompact::gram() const {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      g(i, j) = g(j, i) = points[i].dot(points[j]);
    }
  }
  return g;
}

namespace {

void require_same_basis(const std::string& a, const std::string& b, const char* who) {
  if (a != b) {
    throw std::invalid_argument(std::string(who) + ": basis mismatch ('" + a + "' vs '" + b + "')");
  }
}

void validate(const FiniteCompact& points, const char* who) {
  if (points.points.empty()) throw std::invalid_argument(std::string(who) + ": empty point set");
  const Eigen::Index m = points.points.front().size();
  for (const auto& p : points.points) {
    if (p.size() != m) throw std::invalid_argument(std::string(who) + ": points differ in length");
    if (!p.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
  }
}

}  // namespace

bool brick_contains(const CoordVector& x, const Brick& b) {
  require_same_basis(x.basis_label, b.basis_label, "brick_contains");
  if (static_cast<std::size_t>(x.values.size()) > b.widths.size()) {
    throw std::invalid_argument("brick_contains: vector longer than the stored brick prefix");
  }
  for (Eigen::Index k = 0; k < x.values.size(); ++k) {
    if (!(std::abs(x.values[k]) <= b.widths[k])) return false;
  }
  return true;
}

Brick covering_brick(const FiniteCompact& points) {
  validate(points, "covering_brick");
  Brick b;
  b.basis_label = points.basis_label;
  b.widths.assign(points.dimension(), 0.0);
  for (const auto& p : points.points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) b.widths[k] = std::max(b.widths[k], std::abs(p[k]));
  }
  return b;
}

Brick minkowski_cover(const Brick& b, const CoordVector& h) {
  require_same_basis(h.basis_label, b.basis_label, "minkowski_cover");
  Brick out = b;
  if (static_cast<std::size_t>(h.values.size()) > out.widths.size()) out.widths.resize(h.values.size(), 0.0);
  for (Eigen::Index k = 0; k < h.values.size(); ++k) out.widths[k] += std::abs(h.values[k]);
  return out;
}

Brick project_cover(const Brick& b, const std::set<int>& drop_indices) {
  Brick out = b;
  for (int k : drop_indices) {
    if (k < 1 || static_cast<std::size_t>(k) > out.widths.size()) {
      throw std::invalid_argument("project_cover: index " + std::to_string(k) + " outside the stored prefix");
    }
    out.widths[k - 1] = 0.0;
  }
  return out;
}

IsonormalSample isonormal_sample(const Eigen::MatrixXd& gram, long n_samples, std::uint64_t seed) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    throw std::invalid_argument("isonormal_sample: Gram matrix must be square and nonempty");
  }
  if (n_samples < 2) throw std::invalid_argument("isonormal_sample: n_samples must be >= 2");
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("isonormal_sample: Gram matrix is not symmetric");
  }

  const Eigen::Index m = gram.rows();
  const double trace = gram.trace();
  IsonormalSample out;
  out.gram = gram;
  out.seed = seed;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < -1e-6 * trace) {
      std::ostringstream msg;
      msg << "isonormal_sample: eigenvalue " << lowest << " below -1e-6 * trace";
      throw NotPositiveSemidefiniteError(msg.str());
    }
    out.jitter = 1e-10 * trace / static_cast<double>(m);
    llt.compute(gram + out.jitter * Eigen::MatrixXd::Identity(m, m));
    if (llt.info() != Eigen::Success) {
      throw NotPositiveSemidefiniteError("isonormal_sample: factorization failed after jitter; re-estimate the covariance");
    }
  }
  const Eigen::MatrixXd lower = llt.matrixL();

  std::mt19937_64 engine(family_seed(seed, kIsonormalStream));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(m, n_samples);
  for (long s = 0; s < n_samples; ++s) {
    for (Eigen::Index i = 0; i < m; ++i) z(i, s) = normal(engine);
  }
  out.draws = (lower * z).transpose();
  return out;
}

IsonormalSample isonormal_sample(const FiniteCompact& points, long n_samples, std::uint64_t seed) {
  validate(points, "isonormal_sample");
  return isonormal_sample(points.gram(), n_samples, seed);
}

IsonormalSample isonormal_sample(const CovarianceOracle& oracle, std::span<const Point2> points,
                                 long n_samples, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("isonormal_sample: empty skeleton");
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = oracle(points[i], points[j]);
  }
  return isonormal_sample(g, n_samples, seed);
}

Eigen::MatrixXd canonical_metric(const Eigen::MatrixXd& gram) {
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d(i, j) = i == j ? 0.0 : std::sqrt(std::max(0.0, gram(i, i) + gram(j, j) - 2.0 * gram(i, j)));
    }
  }
  return d;
}

int greedy_net_size(const Eigen::MatrixXd& metric, double eps) {
  const Eigen::Index n = metric.rows();
  std::vector<bool> covered(n, false);
  int centers = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (covered[i]) continue;
    ++centers;
    for (Eigen::Index j = i; j < n; ++j) {
      if (metric(i, j) <= eps) covered[j] = true;
    }
  }
  return centers;
}

DudleyEstimate dudley_estimate(const FiniteCompact& points, const Eigen::MatrixXd& metric) {
  validate(points, "dudley_estimate");
  const Eigen::Index n = static_cast<Eigen::Index>(points.points.size());
  if (metric.rows() != n || metric.cols() != n) {
    throw std::invalid_argument("dudley_estimate: metric table size does not match the point set");
  }
  const double scale = std::max(1.0, metric.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (metric(i, i) != 0.0) throw std::invalid_argument("dudley_estimate: metric diagonal must be 0");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(metric(i, j) - metric(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("dudley_estimate: metric table is not symmetric");
      }
    }
  }

  double diameter = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      diameter = std::max(diameter, metric(i, j));
      if (metric(i, j) > 0.0) smallest = std::min(smallest, metric(i, j));
    }
  }
  DudleyEstimate out;
  if (diameter == 0.0) return out;  // one distinct point: H = 1 everywhere

  constexpr double kSteps = 8.0;  // lattice points per octave
  const int top = static_cast<int>(std::ceil(kSteps * std::log2(diameter)));
  const int bottom = static_cast<int>(std::floor(kSteps * std::log2(smallest)));
  auto lattice = [&](int i) { return std::exp2(i / kSteps); };

  double total = 0.0;
  for (int i = top; i > bottom; --i) {
    const double hi = lattice(i);
    const double lo = lattice(i - 1);
    const int h = greedy_net_size(metric, lo);
    out.covering_numbers.emplace_back(lo, h);
    total += (hi - lo) * std::sqrt(std::log(static_cast<double>(h)));
  }
  // Below the smallest positive distance every distinct point is its own center.
  const int distinct = greedy_net_size(metric, 0.0);
  total += lattice(bottom) * std::sqrt(std::log(static_cast<double>(distinct)));
  out.value = total;
  return out;
}

}  // namespace slt

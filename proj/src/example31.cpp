#include "slt/example31.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "slt/errors.hpp"

namespace slt {

double Example31::gram_entry(int n, int m) {
  if (n == m) return std::pow(static_cast<double>(n), -2.0 / 3.0);
  return std::pow(static_cast<double>(n), -5.0 / 6.0) * std::pow(static_cast<double>(m), -5.0 / 6.0);
}

namespace {

Eigen::MatrixXd hadamard(int size) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
  while (h.rows() < size) {
    const Eigen::Index r = h.rows();
    Eigen::MatrixXd next(2 * r, 2 * r);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return h / std::sqrt(static_cast<double>(size));
}

}  // namespace

// Pivoted Cholesky G = L L^T; row i of L gives the coordinates of generator i
// in the orthonormal basis produced by Gram-Schmidt in pivot order.
Eigen::MatrixXd pivoted_gram_schmidt(const Eigen::MatrixXd& gram, std::vector<int>& pivots) {
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd residual = gram.diagonal();
  std::vector<bool> used(n, false);
  const double tol = 1e-12 * residual.maxCoeff();

  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!used[i] && (p < 0 || residual[i] > residual[p])) p = i;
    }
    if (!(residual[p] > tol)) {
      std::ostringstream msg;
      msg << "Gram matrix is numerically singular: f_" << (p + 1) << " has residual norm^2 "
          << residual[p] << " at step " << (step + 1);
      throw RankDeficiencyError(msg.str(), static_cast<int>(p + 1));
    }
    used[p] = true;
    pivots.push_back(static_cast<int>(p + 1));
    const double pivot = std::sqrt(residual[p]);
    lower(p, step) = pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double proj = gram(i, p) - lower.row(i).head(step).dot(lower.row(p).head(step));
      lower(i, step) = proj / pivot;
      residual[i] -= lower(i, step) * lower(i, step);
    }
  }
  return lower;
}


Eigen::MatrixXd dyadic_hadamard_rotation(int size) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size, size);
  if (size == 0) return r;
  r(0, 0) = 1.0;
  int pos = 1;
  int block = 1;
  while (pos < size) {
    int remaining = std::min(block, size - pos);
    while (remaining > 0) {
      int p = 1;
      while (2 * p <= remaining) p *= 2;
      r.block(pos, pos, p, p) = hadamard(p);
      pos += p;
      remaining -= p;
    }
    block *= 2;
  }
  return r;
}

Example31::Example31(int n, Example31Basis basis) : n_(n), basis_(basis) {
  if (n < 2) throw std::invalid_argument("example31_weight: N must be >= 2");
  gram_.resize(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) gram_(i - 1, j - 1) = gram_entry(i, j);
  }
  coords_ = pivoted_gram_schmidt(gram_, pivots_);
  if (basis_ == Example31Basis::kDyadicRotated) coords_ = coords_ * dyadic_hadamard_rotation(n);
}

std::string Example31::basis_label() const {
  std::ostringstream s;
  s << "example31(N=" << n_ << (basis_ == Example31Basis::kGramSchmidt ? ",gs)" : ",dyadic)");
  return s.str();
}

Eigen::VectorXd Example31::rho0(double t) const {
  if (!(t >= 1.0 && t <= n_)) throw std::invalid_argument("Example31::rho0: t outside [1, N]");
  const int lo = std::min(static_cast<int>(std::floor(t)), n_ - 1);
  const double frac = t - lo;
  return (1.0 - frac) * coords_.row(lo - 1).transpose() + frac * coords_.row(lo).transpose();
}

double Example31::inner(double t, double s) const {
  auto split = [this](double x, int& lo, double& frac) {
    if (!(x >= 1.0 && x <= n_)) throw std::invalid_argument("Example31::inner: t outside [1, N]");
    lo = std::min(static_cast<int>(std::floor(x)), n_ - 1);
    frac = x - lo;
  };
  int a, b;
  double fa, fb;
  split(t, a, fa);
  split(s, b, fb);
  const double wa[2] = {1.0 - fa, fa};
  const double wb[2] = {1.0 - fb, fb};
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) total += wa[i] * wb[j] * gram_entry(a + i, b + j);
  }
  return total;
}

std::vector<double> Example31::coordinate_sups() const {
  std::vector<double> sups(n_);
  for (int m = 0; m < n_; ++m) sups[m] = coords_.col(m).cwiseAbs2().maxCoeff();
  return sups;
}

double Example31::lift(Point2 u, double radius) const {
  const double r = std::sqrt(squared_norm(u));
  return 1.0 + (n_ - 1) * std::min(r / radius, 1.0);
}

std::vector<Point2> Example31::natural_grid(double radius) const {
  std::vector<Point2> grid;
  for (int t = 1; t <= n_; ++t) grid.push_back({radius * (t - 1) / (n_ - 1), 0.0});
  return grid;
}

HilbertWeight Example31::hilbert_weight(int m_coords, double radius) const {
  if (m_coords < 1 || m_coords > n_) throw std::invalid_argument("Example31::hilbert_weight: need 1 <= M <= N");
  if (!(radius > 0.0)) throw std::invalid_argument("Example31::hilbert_weight: radius must be > 0");
  HilbertWeight w;
  w.basis_label = basis_label();
  const auto sups = coordinate_sups();
  for (int m = m_coords; m < n_; ++m) w.tail_bound += sups[m];
  w.tail_bound += std::pow(static_cast<double>(n_), -2.0 / 3.0);

  // Shared coordinate table; each weight reads one column.
  auto table = std::make_shared<const Eigen::MatrixXd>(coords_.leftCols(m_coords));
  const int n = n_;
  for (int m = 0; m < m_coords; ++m) {
    w.coords.emplace_back([table, m, n, radius](Point2 u) {
      const double r = std::sqrt(squared_norm(u));
      const double t = 1.0 + (n - 1) * std::min(r / radius, 1.0);
      const int lo = std::min(static_cast<int>(std::floor(t)), n - 1);
      const double frac = t - lo;
      return (1.0 - frac) * (*table)(lo - 1, m) + frac * (*table)(lo, m);
    });
  }
  return w;
}

FiniteCompact Example31::skeleton(std::span<const double> ts) const {
  FiniteCompact out;
  out.basis_label = basis_label();
  for (double t : ts) out.points.push_back(rho0(t));
  return out;
}

}  // namespace slt

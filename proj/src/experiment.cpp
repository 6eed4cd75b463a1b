#include "slt/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "slt/brick.hpp"
#include "slt/diffeo.hpp"
#include "slt/errors.hpp"
#include "slt/example31.hpp"
#include "slt/example32.hpp"
#include "slt/image.hpp"
#include "slt/rng.hpp"
#include "slt/weights.hpp"

#ifndef SLT_VERSION
#define SLT_VERSION "unknown"
#endif

namespace slt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

EnsembleConfig ensemble_config(const ExperimentConfig& c, const RunOptions& o) {
  EnsembleConfig e;
  e.n_paths = c.n_paths;
  e.n_steps = c.n_steps;
  e.seed = c.seed;
  e.execution = o.execution;
  return e;
}

ResultRow base_row(const ExperimentConfig& c) {
  ResultRow r;
  r.subcommand = to_string(c.subcommand);
  r.k = c.k;
  r.n_paths = c.n_paths;
  r.n_steps = c.n_steps;
  r.seed = c.seed;
  return r;
}

void fill_stats(ResultRow& r, const MCStats& s, std::optional<double> oracle) {
  r.mean = s.mean;
  r.std_error = s.std_error;
  r.m1 = s.m1;
  r.m2 = s.m2;
  r.m4 = s.m4;
  if (oracle) {
    r.oracle = *oracle;
    const double diff = std::abs(s.mean - *oracle);
    r.dev_stderr = s.std_error > 0.0 ? diff / s.std_error
                                     : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  }
}

nlohmann::json stats_json(const MCStats& s) {
  return {{"mean", s.mean}, {"stderr", s.std_error}, {"m1", s.m1}, {"m2", s.m2}, {"m4", s.m4}};
}

nlohmann::json cauchy_json(const std::vector<CauchyRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"eps_coarse", r.eps_coarse}, {"eps_fine", r.eps_fine},
                   {"mean_sq_diff", r.mean_sq_diff}, {"stderr", r.std_error}});
  }
  return out;
}

// Constant value of the scalar weight, when there is one: c, or |det A|^-(k-1) for affine F.
std::optional<double> constant_weight_value(const ExperimentConfig& c, const Diffeomorphism* f) {
  if (c.weight.kind == WeightSpec::Kind::kConstant) return c.weight.constant;
  if (f && f->affine) return std::pow(std::abs(f->jac_det({0.0, 0.0})), -(c.k - 1));
  return std::nullopt;
}

// Closed form exists for k = 2 with a constant weight (scaling is linear in rho).
std::optional<double> renorm_oracle(const ExperimentConfig& c, std::optional<double> weight_const, double eps) {
  if (c.k != 2 || !weight_const) return std::nullopt;
  return *weight_const * analytic_E_renorm2(eps);
}

void run_converge(const ExperimentConfig& c, const RunOptions& o, ExperimentResult& out) {
  std::optional<Diffeomorphism> f;
  std::optional<ScalarWeight> rho;
  if (c.weight.kind == WeightSpec::Kind::kJacobian) {
    f = builtin_diffeomorphism(c.weight.diffeo);
    rho = jacobian_weight(*f, c.k);
  } else {
    rho = ScalarWeight::constant(c.weight.constant);
  }
  const auto weight_const = constant_weight_value(c, f ? &*f : nullptr);

  const EnsembleSamples samples = sample_functionals(ensemble_config(c, o), std::span(&*rho, 1), c.eps_list, c.k);
  nlohmann::json levels = nlohmann::json::array();
  for (int e = 0; e < samples.n_eps(); ++e) {
    const double eps = c.eps_list[e];
    ResultRow r = base_row(c);
    r.epsilon = eps;
    fill_stats(r, summarize(samples.renormalized_column(e, 0)), renorm_oracle(c, weight_const, eps));
    r.label = "renormalized";
    out.rows.push_back(r);

    nlohmann::json lv = {{"epsilon", eps}, {"levels", nlohmann::json::array()}};
    for (int l = 1; l <= c.k; ++l) {
      nlohmann::json s = stats_json(summarize(samples.level_column(e, 0, l)));
      s["l"] = l;
      if (l == 2 && weight_const) s["oracle"] = *weight_const * analytic_E_T2(eps);
      lv["levels"].push_back(s);
    }
    levels.push_back(lv);
  }
  out.diagnostics["raw_levels"] = levels;
  out.diagnostics["cauchy"] = cauchy_json(cauchy_rows(samples, c.eps_list));
}

void run_hilbert(const ExperimentConfig& c, const RunOptions& o, ExperimentResult& out) {
  HilbertWeight weight;
  std::optional<double> weight_const;
  std::vector<Point2> grid;
  if (c.weight.kind == WeightSpec::Kind::kExample31) {
    const Example31 ex(c.weight.n, c.weight.basis == "dyadic" ? Example31Basis::kDyadicRotated
                                                              : Example31Basis::kGramSchmidt);
    const int m = c.weight.coords > 0 ? c.weight.coords : std::min(c.weight.n, 20);
    weight = ex.hilbert_weight(m);
    grid = ex.natural_grid();
  } else {
    weight.coords.push_back(ScalarWeight::constant(c.weight.constant));
    weight.basis_label = "scalar";
    weight_const = c.weight.constant;
    grid = {{0.0, 0.0}};
  }
  const int m_coords = weight.dimension();

  const EnsembleSamples samples = sample_functionals(ensemble_config(c, o), weight.coords, c.eps_list, c.k);
  nlohmann::json partials = nlohmann::json::array();
  for (int e = 0; e < samples.n_eps(); ++e) {
    const double eps = c.eps_list[e];
    std::vector<double> norm_sq(samples.n_paths(), 0.0);
    std::vector<double> squares(samples.n_paths());
    std::vector<double> partial;
    double running = 0.0;
    for (int m = 0; m < m_coords; ++m) {
      ResultRow r = base_row(c);
      r.epsilon = eps;
      fill_stats(r, summarize(samples.renormalized_column(e, m)), renorm_oracle(c, weight_const, eps));
      r.label = "coord:" + std::to_string(m + 1);
      out.rows.push_back(r);
      for (long p = 0; p < samples.n_paths(); ++p) {
        const double v = samples.renormalized(p, e, m);
        squares[p] = v * v;
        norm_sq[p] += squares[p];
      }
      running += pairwise_sum(squares) / static_cast<double>(samples.n_paths());
      partial.push_back(running);
    }
    ResultRow r = base_row(c);
    r.epsilon = eps;
    fill_stats(r, summarize(norm_sq), std::nullopt);
    r.label = "norm_sq";
    out.rows.push_back(r);
    partials.push_back({{"epsilon", eps}, {"norm_sq_partial", partial}});
  }

  const ConditionStarProfile profile = condition_star_profile(weight, grid);
  out.diagnostics["basis"] = weight.basis_label;
  out.diagnostics["tail_bound"] = weight.tail_bound;
  out.diagnostics["condition_star"] = {{"sups", profile.sups}, {"partial_sums", profile.partial_sums}};
  out.diagnostics["norm_sq_partial"] = partials;
}

nlohmann::json isonormal_json(const Eigen::MatrixXd& target, const IsonormalSample& s) {
  const long n = s.draws.rows();
  const Eigen::MatrixXd emp = s.draws.transpose() * s.draws / static_cast<double>(n);
  const double rel = (emp - target).norm() / target.norm();
  return {{"draws", n}, {"jitter", s.jitter}, {"relative_frobenius", rel}};
}

void add_brick_rows(const ExperimentConfig& c, const FiniteCompact& skeleton, const Eigen::MatrixXd& gram,
                    ExperimentResult& out) {
  const Brick brick = covering_brick(skeleton);
  for (std::size_t m = 0; m < brick.widths.size(); ++m) {
    ResultRow r = base_row(c);
    r.k = static_cast<int>(m + 1);
    r.epsilon = brick.widths[m];
    r.mean = brick.widths[m] * brick.widths[m];
    r.label = "width:" + std::to_string(m + 1);
    out.rows.push_back(r);
  }
  const DudleyEstimate dudley = dudley_estimate(skeleton, canonical_metric(gram));
  ResultRow r = base_row(c);
  r.k = 0;
  r.mean = dudley.value;
  r.label = "dudley";
  out.rows.push_back(r);

  bool contained = true;
  for (const auto& x : skeleton.points) contained = contained && brick_contains({skeleton.basis_label, x}, brick);
  nlohmann::json nets = nlohmann::json::array();
  for (const auto& [eps, h] : dudley.covering_numbers) nets.push_back({eps, h});

  out.diagnostics["basis"] = skeleton.basis_label;
  out.diagnostics["brick_squared_size"] = brick.squared_size();
  out.diagnostics["skeleton_in_brick"] = contained;
  out.diagnostics["covering_numbers"] = nets;
}

void run_brick_check(const ExperimentConfig& c, const RunOptions&, ExperimentResult& out) {
  const std::uint64_t iso_seed = family_seed(c.seed, kIsonormalStream);
  if (c.weight.kind == WeightSpec::Kind::kExample31) {
    const Example31 ex(c.weight.n, c.weight.basis == "dyadic" ? Example31Basis::kDyadicRotated
                                                              : Example31Basis::kGramSchmidt);
    std::vector<double> ts(c.weight.n);
    for (int i = 0; i < c.weight.n; ++i) ts[i] = i + 1.0;
    const FiniteCompact skeleton = ex.skeleton(ts);
    const Eigen::MatrixXd gram = skeleton.gram();
    add_brick_rows(c, skeleton, gram, out);

    const auto sups = ex.coordinate_sups();
    std::vector<double> partial(sups.size());
    double running = 0.0;
    for (std::size_t m = 0; m < sups.size(); ++m) partial[m] = running += sups[m];
    out.diagnostics["condition_star"] = {{"sups", sups}, {"partial_sums", partial}};
    out.diagnostics["isonormal"] = isonormal_json(gram, isonormal_sample(gram, c.n_paths, iso_seed));
    return;
  }

  std::vector<Point2> grid = c.weight.grid;
  if (grid.empty()) grid = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}, {0.7, 0.7}};
  const Example32Field field(grid, c.weight.mc_samples, family_seed(c.seed, kFieldStream));
  const Eigen::MatrixXd& cov = field.covariance_matrix();

  // Karhunen-Loeve coordinates on the grid: rows of V sqrt(Lambda), largest mode first.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const long n = cov.rows();
  FiniteCompact skeleton{"example32-kl", {}};
  for (long i = 0; i < n; ++i) {
    Eigen::VectorXd x(n);
    for (long m = 0; m < n; ++m) {
      const long j = n - 1 - m;
      x[m] = eig.eigenvectors()(i, j) * std::sqrt(std::max(eig.eigenvalues()[j], 0.0));
    }
    skeleton.points.push_back(x);
  }
  add_brick_rows(c, skeleton, cov, out);
  out.diagnostics["max_covariance_stderr"] = field.covariance_stderr().maxCoeff();
  out.diagnostics["isonormal"] = isonormal_json(cov, isonormal_sample(cov, c.n_paths, iso_seed));
}

void run_image_check(const ExperimentConfig& c, const RunOptions& o, ExperimentResult& out) {
  const Diffeomorphism f = builtin_diffeomorphism(c.weight.diffeo);
  const auto weight_const = constant_weight_value(c, &f);
  const auto estimates = renorm_image(ensemble_config(c, o), f, c.eps_list, c.k);
  for (const auto& est : estimates) {
    ResultRow r = base_row(c);
    r.epsilon = est.epsilon;
    fill_stats(r, est.renormalized, renorm_oracle(c, weight_const, est.epsilon));
    r.label = "image:" + f.name;
    out.rows.push_back(r);
  }

  // Substitution identity on the first few ensemble paths.
  const long checked = std::min<long>(c.n_paths, 4);
  double worst = 0.0;
  for (double eps : c.eps_list) {
    for (long p = 0; p < checked; ++p) {
      const PlanarPath path = ensemble_path(c.n_steps, c.seed, static_cast<std::uint64_t>(p));
      worst = std::max(worst, image_slt(path, f, eps, c.k).residual);
    }
  }
  out.diagnostics["image_residual_max"] = worst;
  out.diagnostics["image_residual_paths"] = checked;
}

void run_lemma_delta(const ExperimentConfig& c, const RunOptions&, ExperimentResult& out) {
  const Diffeomorphism f = builtin_diffeomorphism(c.weight.diffeo);
  const Point2 v_k{0.5, 0.25};
  const TestFunction bump = bump_test_function(v_k, 1.5);
  const TestFunction one = constant_test_function(1.0);
  for (const TestFunction* phi : {&bump, &one}) {
    for (const LemmaDeltaRow& d : lemma_delta_check(*phi, v_k, f, c.k, c.eps_list)) {
      ResultRow r = base_row(c);
      r.epsilon = d.epsilon;
      r.mean = d.integral;
      r.oracle = d.target;
      r.label = phi->name;
      out.rows.push_back(r);
    }
  }
  out.diagnostics["v_k"] = {v_k.x, v_k.y};
  out.diagnostics["map"] = f.name;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (auto v = validate(config); !v.empty()) throw ConfigError(std::move(v));

  ExperimentResult out;
  out.warnings = config_warnings(config);
  const auto start = std::chrono::steady_clock::now();
  switch (config.subcommand) {
    case Subcommand::kConverge: run_converge(config, options, out); break;
    case Subcommand::kHilbert: run_hilbert(config, options, out); break;
    case Subcommand::kBrickCheck: run_brick_check(config, options, out); break;
    case Subcommand::kImageCheck: run_image_check(config, options, out); break;
    case Subcommand::kLemmaDelta: run_lemma_delta(config, options, out); break;
  }
  if (config.record_wall_time) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : out.rows) r.wall_time_s = secs;
  }
  return out;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string s = kCsvHeader;
  s += '\n';
  auto cell = [&s](const std::optional<double>& v) {
    s += ',';
    if (v) s += format_double(*v);
  };
  for (const auto& r : rows) {
    s += r.subcommand;
    s += ',' + std::to_string(r.k);
    cell(r.epsilon);
    cell(r.mean);
    cell(r.std_error);
    cell(r.m1);
    cell(r.m2);
    cell(r.m4);
    cell(r.oracle);
    cell(r.dev_stderr);
    s += ',' + std::to_string(r.n_paths);
    s += ',' + std::to_string(r.n_steps);
    s += ',' + std::to_string(r.seed);
    cell(r.wall_time_s);
    s += '\n';
  }
  return s;
}

std::string format_sidecar(const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::json doc;
  doc["library"] = "slt";
  doc["version"] = SLT_VERSION;
  doc["config"] = to_json(config);
  doc["columns"] = kCsvHeader;
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& r : result.rows) labels.push_back(r.label);
  doc["row_labels"] = labels;
  doc["diagnostics"] = result.diagnostics;
  doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << body;
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
  };
  write(config.output_path, format_csv(result.rows));
  write(config.output_path + ".json", format_sidecar(config, result));
}

}  // namespace slt

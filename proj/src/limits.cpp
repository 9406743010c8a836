#include "lpball/limits.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lpball/closed_forms.hpp"
#include "lpball/errors.hpp"
#include "lpball/geometry.hpp"
#include "lpball/kernels.hpp"
#include "lpball/parallel.hpp"
#include "lpball/stats.hpp"

namespace lpball::limits {

Centering parse_centering(std::string_view text) {
  if (text == "asymptotic") return Centering::asymptotic;
  if (text == "exact" || text == "exact_finite_n") return Centering::exact_finite_n;
  throw DomainError("unknown centering '" + std::string(text) + "' (expected asymptotic or exact)");
}

std::string_view to_string(Centering c) { return c == Centering::asymptotic ? "asymptotic" : "exact_finite_n"; }

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void validate(const ExperimentConfig& config) {
  if (config.m < 1 || config.m > 3) throw DomainError("experiments support m in {1, 2, 3}");
  if (config.n < config.m) throw DomainError("need N >= m");
  if (config.replicates < 1) throw DomainError("need at least one replicate");
}

SphereGrid experiment_grid(const ExperimentConfig& config) {
  const std::size_t res = config.grid_resolution ? config.grid_resolution : default_grid_resolution(config.m);
  return sphere_grid(config.m, res);
}

// Mean volume of the rescaled body at finite N, obtained by replacing E|g|^e
// with its exact Stiefel counterpart in the asymptotic formula.
double finite_n_centre(const BodySpec& body, std::size_t m, std::size_t n) {
  const double e = body.exponent();
  const double a_n = closed_forms::stiefel_exact_moment(static_cast<long long>(n), e, true);
  const double power = body.mode() == BodyMode::projection ? static_cast<double>(m) / e : -static_cast<double>(m) / e;
  return closed_forms::unit_ball_volume(static_cast<int>(m)) * std::pow(a_n, power);
}

}  // namespace

std::vector<double> empirical_process(const StiefelFrame& v, double q, const SphereGrid& grid, Centering centering) {
  if (!(q >= 1.0)) throw DomainError("empirical_process: q must be >= 1");
  if (grid.m != v.m()) throw DomainError("empirical_process: grid dimension does not match the frame");
  const double n = static_cast<double>(v.n());
  const double centre = centering == Centering::asymptotic
                            ? closed_forms::abs_gaussian_moment(q)
                            : closed_forms::stiefel_exact_moment(static_cast<long long>(v.n()), q, true);
  const double scale = std::pow(n, q / 2.0);
  std::vector<double> z(grid.count());
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double s = kernels::abs_power_sum(v.entries(), v.m(), v.n(), grid.direction(j), q);
    z[j] = (scale * s - n * centre) / std::sqrt(n);
  }
  return z;
}

ExperimentReport clt_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config);
  const BodySpec body = BodySpec::make(config.mode, config.p);
  if (body.is_euclidean()) throw ModeViolation("the volume CLT is degenerate at p = 2");

  ExperimentReport report;
  report.config = config;
  const int m = static_cast<int>(config.m);
  report.mu = closed_forms::asymptotic_mean(body, m);
  report.sigma_sq = closed_forms::asymptotic_variance(body, m);
  report.centre = config.centering == Centering::asymptotic ? report.mu : finite_n_centre(body, config.m, config.n);

  const SphereGrid grid = experiment_grid(config);
  const double root_n = std::sqrt(static_cast<double>(config.n));
  const double sigma = std::sqrt(report.sigma_sq);
  report.standardized.resize(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    const StiefelFrame frame = sample_stiefel(config.m, config.n, {config.seed.master_seed, config.seed.stream + r});
    const double vol = geometry::scaled_body_volume(frame, config.p, config.mode, grid);
    report.standardized[r] = root_n * (vol - report.centre) / sigma;
  });

  const std::span<const double> z(report.standardized);
  report.sample_mean = stats::mean(z);
  report.sample_variance = z.size() > 1 ? stats::variance(z) : 0.0;
  report.sample_skewness = z.size() > 2 ? stats::skewness(z) : 0.0;
  if (z.size() >= 10) {
    const KsResult ks = ks_statistic(z, rng::normal_cdf);
    report.ks_statistic = ks.statistic;
    report.ks_p_value = ks.p_value;
  }
  for (double level : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
    report.quantiles.push_back({level, stats::quantile(z, level)});
  }
  report.wall_time = seconds_since(start);
  return report;
}

HausdorffReport hausdorff_experiment(const ExperimentConfig& config, std::span<const std::size_t> ladder) {
  const auto start = std::chrono::steady_clock::now();
  const BodySpec body = BodySpec::make(config.mode, config.p);
  HausdorffReport report;
  report.config = config;
  report.radius = closed_forms::limit_radius(body);
  const SphereGrid grid = experiment_grid(config);
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    ExperimentConfig rung = config;
    rung.n = ladder[k];
    validate(rung);
    HausdorffRow row{rung.n, 0.0, std::vector<double>(config.replicates)};
    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
      const SeedSpec seed{config.seed.master_seed, config.seed.stream + (static_cast<std::uint64_t>(k) << 32) + r};
      const StiefelFrame frame = sample_stiefel(config.m, rung.n, seed);
      const auto profile = geometry::body_support_profile(frame, config.p, config.mode, grid);
      row.distances[r] = geometry::hausdorff_to_ball(profile, report.radius);
    });
    row.median = stats::median(row.distances);
    report.rows.push_back(std::move(row));
  }
  report.wall_time = seconds_since(start);
  return report;
}

CovarianceReport covariance_experiment(double q, std::span<const double> u, std::span<const double> v, std::size_t n,
                                       std::size_t replicates, SeedSpec seed, Centering centering, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = u.size();
  if (m < 1 || v.size() != m) throw DomainError("covariance_experiment: u and v need the same positive dimension");
  if (n < m) throw DomainError("covariance_experiment: need N >= m");
  if (replicates < 2) throw DomainError("covariance_experiment: need at least two replicates");
  CovarianceReport report{};
  report.analytic = closed_forms::process_covariance(q, u, v);

  SphereGrid pair;
  pair.m = m;
  pair.directions.assign(u.begin(), u.end());
  pair.directions.insert(pair.directions.end(), v.begin(), v.end());
  pair.weights = {0.5, 0.5};

  std::vector<double> zu(replicates);
  std::vector<double> zv(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    const StiefelFrame frame = sample_stiefel(m, n, {seed.master_seed, seed.stream + r});
    const auto z = empirical_process(frame, q, pair, centering);
    zu[r] = z[0];
    zv[r] = z[1];
  });
  report.empirical = stats::covariance(zu, zv);
  const double mu = stats::mean(zu);
  const double mv = stats::mean(zv);
  std::vector<double> prod(replicates);
  for (std::size_t r = 0; r < replicates; ++r) prod[r] = (zu[r] - mu) * (zv[r] - mv);
  report.standard_error = std::sqrt(stats::variance(prod) / static_cast<double>(replicates));
  report.wall_time = seconds_since(start);
  return report;
}

std::size_t upper_index(std::size_t s, std::size_t t, std::size_t m) {
  if (s > t || t >= m) throw DomainError("upper_index: need s <= t < m");
  return s * m - s * (s - 1) / 2 + (t - s);
}

linalg::Matrix mdp_covariance_matrix(double q, std::span<const std::vector<double>> points, std::size_t m) {
  if (!(q >= 1.0 && q < 2.0)) throw DomainError("mdp_covariance_matrix: q must lie in [1, 2)");
  if (m < 1) throw DomainError("mdp_covariance_matrix: m must be positive");
  const std::size_t k = points.size();
  for (const auto& u : points) {
    if (u.size() != m) throw DomainError("mdp_covariance_matrix: point dimension differs from m");
    closed_forms::require_unit(u, "point");
  }
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double rho = 0.0;
      for (std::size_t s = 0; s < m; ++s) rho += points[i][s] * points[j][s];
      if (i != j && std::abs(rho) >= 1.0 - 1e-12)
        throw DomainError("mdp_covariance_matrix: points must be distinct and not antipodal");
      gram[i][j] = i == j ? 1.0 : std::clamp(rho, -1.0, 1.0);
    }

  const std::size_t tri = m * (m + 1) / 2;
  linalg::Matrix c(k + tri, k + tri);
  const double a = closed_forms::abs_gaussian_moment(q);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c(i, j) = closed_forms::mixed_abs_moment(q, gram[i][j]) - a * a;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = s; t < m; ++t) {
        const double cross = closed_forms::quadratic_cross_moment(q, points[i], s, t) - (s == t ? a : 0.0);
        const std::size_t col = k + upper_index(s, t, m);
        c(i, col) = c(col, i) = cross;
      }
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = s; t < m; ++t) {
      const std::size_t d = k + upper_index(s, t, m);
      c(d, d) = s == t ? 2.0 : 1.0;
    }
  return c;
}

MdpRate mdp_rate_quadratic(const linalg::Matrix& c, std::span<const double> uhat) {
  if (c.rows != c.cols || uhat.size() != c.rows) throw DomainError("mdp_rate_quadratic: dimension mismatch");
  double scale = 0.0;
  for (double x : c.data) scale = std::max(scale, std::abs(x));
  if (linalg::max_abs_asymmetry(c) > 1e-12 * std::max(scale, 1.0))
    throw DomainError("mdp_rate_quadratic: matrix is not symmetric");
  const auto eig = linalg::eigen_symmetric(c);
  const double lmin = eig.values.front();
  const double lmax = eig.values.back();
  if (!(lmin > 1e-13 * lmax)) throw DegenerateMatrix("mdp_rate_quadratic: covariance matrix is singular");
  const linalg::Matrix lower = linalg::cholesky(c);
  const std::vector<double> x = linalg::cholesky_solve(lower, uhat);
  double quad = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) quad += uhat[i] * x[i];
  return {0.5 * quad, lmax / lmin};
}

StiefelRate stiefel_rate_gaussian(const GaussianMeasure& nu) {
  const linalg::Matrix& sigma = nu.covariance;
  if (sigma.rows == 0 || sigma.rows != sigma.cols) throw DomainError("stiefel_rate_gaussian: covariance must be square");
  if (linalg::max_abs_asymmetry(sigma) > 1e-12) throw DomainError("stiefel_rate_gaussian: covariance is not symmetric");
  const auto eig = linalg::eigen_symmetric(sigma);
  if (eig.values.front() < -1e-12) throw DomainError("stiefel_rate_gaussian: covariance is not positive semidefinite");
  // Id - Sigma has eigenvalues 1 - lambda.
  if (1.0 - eig.values.back() < -1e-12) return {std::numeric_limits<double>::infinity(), false};
  const double m = static_cast<double>(sigma.rows);
  double trace = 0.0;
  double log_det = 0.0;
  for (double lambda : eig.values) {
    trace += lambda;
    log_det += std::log(std::max(lambda, 0.0));
  }
  const double entropy = 0.5 * (trace - m - log_det);
  return {entropy + 0.5 * (m - trace), true};
}

double kolmogorov_survival(double t) {
  if (!(t > 0.0)) return 1.0;
  if (t < 1.18) {
    const double pi = std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi * pi / (8.0 * t * t));
    }
    return 1.0 - std::sqrt(2.0 * pi) / t * cdf;
  }
  double tail = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    tail += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * tail, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> samples, const std::function<double(double)>& target_cdf) {
  if (samples.size() < 10) throw DomainError("ks_statistic: need at least 10 samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = target_cdf(s[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KsResult out{d, std::nullopt};
  if (s.size() >= 1000) out.p_value = kolmogorov_survival(std::sqrt(n) * d);
  return out;
}

}  // namespace lpball::limits

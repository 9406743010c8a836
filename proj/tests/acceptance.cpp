// Acceptance suite. One line per check and one summary line per criterion;
// pass a criterion id (AC1 ... AC8) to run a single one.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lpball/closed_forms.hpp"
#include "lpball/limits.hpp"
#include "lpball/sampling.hpp"
#include "lpball/specfun.hpp"
#include "lpball/stats.hpp"

using namespace lpball;
namespace cf = lpball::closed_forms;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

class Checks {
 public:
  void add(std::string name, bool pass, std::string detail = {}) {
    items_.push_back({std::move(name), pass, std::move(detail)});
  }
  // |got - want| <= tol, absolute.
  void near(const std::string& name, double got, double want, double tol) {
    const double err = std::abs(got - want);
    add(name, err <= tol, fmt("got %.17g want %.17g |diff| %.3g tol %.3g", got, want, err, tol));
  }
  void near_rel(const std::string& name, double got, double want, double tol) {
    const double err = std::abs(got - want) / std::abs(want);
    add(name, err <= tol, fmt("got %.17g want %.17g rel %.3g tol %.3g", got, want, err, tol));
  }
  // Monte Carlo estimate within k standard errors.
  void within_se(const std::string& name, double estimate, double se, double exact, double k = 4.0) {
    const double z = (estimate - exact) / se;
    add(name, std::abs(z) <= k, fmt("mc %.8g exact %.8g se %.3g z %.2f", estimate, exact, se, z));
  }
  [[nodiscard]] const std::vector<Check>& items() const { return items_; }

  template <class... A>
  static std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, a...);
    return buf;
  }

 private:
  std::vector<Check> items_;
};

using Clock = std::chrono::steady_clock;
double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Sample mean and its standard error from a generator of draws.
struct McEstimate {
  double mean;
  double se;
};

McEstimate monte_carlo(std::size_t n, const std::function<double()>& draw) {
  std::vector<double> x(n);
  for (double& v : x) v = draw();
  return {stats::mean(x), std::sqrt(stats::variance(x) / double(n))};
}

std::vector<double> unit(std::vector<double> u) {
  double n2 = 0.0;
  for (double x : u) n2 += x * x;
  for (double& x : u) x /= std::sqrt(n2);
  return u;
}

std::string label(const char* f, double a, double b = 0.0, double c = 0.0) { return Checks::fmt(f, a, b, c); }

// ------------------------------------------------------------------ AC1

void closed_form_identities(Checks& c) {
  const auto t0 = Clock::now();
  const PNorm ps[] = {PNorm::finite(1.0), PNorm::finite(1.5), PNorm::finite(2.0), PNorm::finite(3.0), PNorm::infinity()};
  for (BodyMode mode : {BodyMode::projection, BodyMode::section})
    for (const PNorm& p : ps) {
      if (mode == BodyMode::projection && !p.is_infinite() && p.value() == 1.0) continue;
      if (mode == BodyMode::section && p.is_infinite()) continue;
      for (int m = 1; m <= 3; ++m) {
        const double r = cf::limit_radius(mode, p);
        c.near_rel("mean = kappa_m r^m, " + std::string(to_string(mode)) + " p=" + p.to_string() + " m=" + std::to_string(m),
                   cf::asymptotic_mean(mode, p, m), cf::unit_ball_volume(m) * std::pow(r, m), 1e-12);
      }
    }
  for (BodyMode mode : {BodyMode::projection, BodyMode::section})
    for (int m = 1; m <= 3; ++m) {
      c.near("variance vanishes at p=2, " + std::string(to_string(mode)) + " m=" + std::to_string(m),
             cf::asymptotic_variance(mode, PNorm::finite(2.0), m), 0.0, 1e-10);
    }
  c.near("cube variance forms agree at m=1: 4(pi-3)/pi vs 4-12/pi", 4.0 * (kPi - 3.0) / kPi, 4.0 - 12.0 / kPi, 1e-12);
  c.near("cube variance at m=1 from the general formula", cf::asymptotic_variance(BodyMode::projection, PNorm::infinity(), 1),
         4.0 * (kPi - 3.0) / kPi, 1e-12);

  const std::array<double, 1> plus{1.0};
  const std::array<double, 1> minus{-1.0};
  for (double q : {1.0, 1.5, 3.0}) {
    const double avg = 0.25 * (cf::process_covariance(q, plus, plus) + cf::process_covariance(q, plus, minus) +
                               cf::process_covariance(q, minus, plus) + cf::process_covariance(q, minus, minus));
    const double sigma_sq = cf::asymptotic_variance(BodyMode::projection, PNorm::finite(q).conjugate(), 1);
    c.near(label("m=1 variance bridge 4*avg process_covariance = sigma^2, q=%g", q), 4.0 * avg, sigma_sq, 1e-10);
  }
  c.add("runtime < 1 s", seconds(t0) < 1.0, Checks::fmt("%.3f s", seconds(t0)));
}

// ------------------------------------------------------------------ AC2

void special_functions(Checks& c) {
  const auto t0 = Clock::now();
  double worst2 = 0.0, worst1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = i / 99.0;
    worst2 = std::max(worst2, std::abs(specfun::gauss_2f1_diag(2.0, x) - (1.0 + 2.0 * x)));
    const double closed = std::sqrt(1.0 - x) + std::sqrt(x) * std::asin(std::sqrt(x));
    worst1 = std::max(worst1, std::abs(specfun::gauss_2f1_diag(1.0, x) - closed));
  }
  c.add("2F1(q=2, x) = 1 + 2x on 100 points, tol 1e-12", worst2 <= 1e-12, Checks::fmt("max |diff| %.3g", worst2));
  c.add("2F1(q=1, x) = sqrt(1-x) + sqrt(x) asin(sqrt(x)) on 100 points, tol 1e-10", worst1 <= 1e-10,
        Checks::fmt("max |diff| %.3g", worst1));
  for (double q : {1.0, 1.25, 1.5, 3.0}) {
    // Gauss summation with the C library Gamma.
    const double gauss = std::tgamma(0.5) * std::tgamma(0.5 + q) / std::pow(std::tgamma(0.5 + q / 2.0), 2);
    c.near(label("series at x=1 vs Gauss summation, q=%g", q), specfun::gauss_2f1_diag(q, 1.0), gauss, 1e-10);
  }
  c.add("runtime < 1 s", seconds(t0) < 1.0, Checks::fmt("%.3f s", seconds(t0)));
}

// ------------------------------------------------------------------ AC3

void sampler_invariants(Checks& c) {
  const auto t0 = Clock::now();
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 64}, {2, 256}, {3, 1024}};
  for (auto [m, n] : shapes) {
    const SphereGrid grid = sphere_grid(m, m == 1 ? 2 : (m == 2 ? 256 : 512));
    double worst_defect = 0.0, worst_z = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const StiefelFrame v = sample_stiefel(m, n, {kDefaultSeed, s});
      worst_defect = std::max(worst_defect, v.orthonormality_defect());
      for (auto centering : {limits::Centering::asymptotic, limits::Centering::exact_finite_n})
        for (double z : limits::empirical_process(v, 2.0, grid, centering)) worst_z = std::max(worst_z, std::abs(z));
    }
    c.add(Checks::fmt("1000 frames (m=%zu, N=%zu): max |VV^T - I| <= 1e-10", m, n), worst_defect <= 1e-10,
          Checks::fmt("max defect %.3g", worst_defect));
    c.add(Checks::fmt("1000 frames (m=%zu, N=%zu): q=2 empirical process <= 1e-8", m, n), worst_z <= 1e-8,
          Checks::fmt("max |Z| %.3g", worst_z));
  }
  const std::size_t n = 100;
  const std::size_t reps = 100000;
  for (double q : {1.0, 3.0}) {
    std::vector<double> x(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const StiefelFrame v = sample_stiefel(1, n, {kDefaultSeed + 1, r});
      x[r] = std::pow(std::abs(std::sqrt(double(n)) * v(0, 0)), q);
    }
    c.within_se(label("rescaled column moment at N=100, q=%g, 1e5 replicates", q), stats::mean(x),
                std::sqrt(stats::variance(x) / double(reps)), cf::stiefel_exact_moment(n, q, true));
  }
  c.add("runtime < 30 s", seconds(t0) < 30.0, Checks::fmt("%.1f s", seconds(t0)));
}

// ------------------------------------------------------------------ AC4

void moment_oracles(Checks& c) {
  const auto t0 = Clock::now();
  const std::size_t samples = 1000000;
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> normal;
  auto gaussian = [&](std::size_t m) {
    std::vector<double> g(m);
    for (double& x : g) x = normal(gen);
    return g;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  const double qs[] = {1.0, 1.5, 3.0};
  const double rhos[] = {0.0, 0.3, 0.9};

  for (double q : qs)
    for (double rho : rhos) {
      const double s = std::sqrt(1.0 - rho * rho);
      const auto est = monte_carlo(samples, [&] {
        const double x = normal(gen);
        const double y = rho * x + s * normal(gen);
        return std::pow(std::abs(x * y), q);
      });
      c.within_se(label("mixed_abs_moment q=%g rho=%g", q, rho), est.mean, est.se, cf::mixed_abs_moment(q, rho));
    }

  const std::vector<std::vector<double>> us{{1.0}, unit({0.6, 0.8}), unit({2.0, 3.0, 6.0})};
  for (double q : qs)
    for (const auto& u : us) {
      const std::size_t m = u.size();
      for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s; t < m; ++t) {
          const auto est = monte_carlo(samples, [&] {
            const auto g = gaussian(m);
            return std::pow(std::abs(dot(g, u)), q) * g[s] * g[t];
          });
          c.within_se(Checks::fmt("quadratic_cross_moment q=%g m=%zu s=%zu t=%zu", q, m, s, t), est.mean, est.se,
                      cf::quadratic_cross_moment(q, u, s, t));
        }
    }

  auto sphere_point = [&](std::size_t m) { return unit(gaussian(m)); };
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<std::pair<double, double>> pq;
    for (double q : qs) pq.push_back({q, q});
    pq.push_back({1.0, 3.0});
    for (auto [p, q] : pq) {
      const auto est = monte_carlo(samples, [&] {
        const auto g = gaussian(m);
        const auto u = sphere_point(m);
        const auto v = sphere_point(m);
        return std::pow(std::abs(dot(g, u)), p) * std::pow(std::abs(dot(g, v)), q);
      });
      c.within_se(Checks::fmt("double_sphere_expectation m=%zu p=%g q=%g", m, p, q), est.mean, est.se,
                  cf::double_sphere_expectation(int(m), p, q));
    }
  }

  // Linearised empirical process: Y(u) = |<g,u>|^q - a - (q/2) a (<g,u>^2 - 1)
  // has mean zero and the limit covariance.
  for (double q : qs) {
    const double a = cf::abs_gaussian_moment(q);
    auto y = [&](double proj) { return std::pow(std::abs(proj), q) - a - 0.5 * q * a * (proj * proj - 1.0); };
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs{{{1.0}, {1.0}}, {{1.0}, {-1.0}}};
    for (double rho : rhos) {
      const double s = std::sqrt(1.0 - rho * rho);
      pairs.push_back({{1.0, 0.0}, {rho, s}});
      pairs.push_back({{1.0, 0.0, 0.0}, {rho, 0.6 * s, 0.8 * s}});
    }
    for (const auto& [u, v] : pairs) {
      const std::size_t m = u.size();
      std::vector<double> yu(samples), yv(samples);
      for (std::size_t i = 0; i < samples; ++i) {
        const auto g = gaussian(m);
        yu[i] = y(dot(g, u));
        yv[i] = y(dot(g, v));
      }
      const double mu = stats::mean(yu), mv = stats::mean(yv);
      std::vector<double> prod(samples);
      for (std::size_t i = 0; i < samples; ++i) prod[i] = (yu[i] - mu) * (yv[i] - mv);
      c.within_se(Checks::fmt("process_covariance q=%g m=%zu <u,v>=%g", q, m, dot(u, v)), stats::covariance(yu, yv),
                  std::sqrt(stats::variance(prod) / double(samples)), cf::process_covariance(q, u, v));
    }
  }
  c.add("runtime < 2 min", seconds(t0) < 120.0, Checks::fmt("%.1f s", seconds(t0)));
}

// ------------------------------------------------------------------ AC5

// Both CLT runs use master seed 7.
void clt_reproduction(Checks& c) {
  {
    const auto t0 = Clock::now();
    limits::ExperimentConfig cfg;
    cfg.mode = BodyMode::projection;
    cfg.p = PNorm::infinity();
    cfg.m = 1;
    cfg.n = 4096;
    cfg.replicates = 20000;
    cfg.seed = {7, 0};
    const auto r = limits::clt_experiment(cfg);
    const std::string tag = "cube projection m=1 N=4096 M=20000: ";
    c.add(tag + "|mean| <= 0.05", std::abs(r.sample_mean) <= 0.05, Checks::fmt("mean %.4f", r.sample_mean));
    c.add(tag + "|variance - 1| <= 0.1", std::abs(r.sample_variance - 1.0) <= 0.1, Checks::fmt("variance %.4f", r.sample_variance));
    c.add(tag + "|skewness| <= 0.1", std::abs(r.sample_skewness) <= 0.1, Checks::fmt("skewness %.4f", r.sample_skewness));
    c.add(tag + "KS p > 0.01", r.ks_p_value && *r.ks_p_value > 0.01,
          Checks::fmt("D %.4f p %.4f", r.ks_statistic, r.ks_p_value.value_or(-1.0)));
    c.add(tag + "runtime < 5 min", seconds(t0) < 300.0, Checks::fmt("%.1f s", seconds(t0)));
  }
  {
    const auto t0 = Clock::now();
    limits::ExperimentConfig cfg;
    cfg.mode = BodyMode::section;
    cfg.p = PNorm::finite(1.0);
    cfg.m = 2;
    cfg.n = 2048;
    cfg.replicates = 2000;
    cfg.grid_resolution = 2048;
    cfg.seed = {7, 0};
    const auto r = limits::clt_experiment(cfg);
    const std::string tag = "cross-polytope section m=2 N=2048 M=2000: ";
    // Standardised by sigma^2, so the variance ratio is the sample variance.
    c.add(tag + "variance within 15% of sigma^2", std::abs(r.sample_variance - 1.0) <= 0.15,
          Checks::fmt("variance ratio %.4f (sigma^2 %.6f)", r.sample_variance, r.sigma_sq));
    c.add(tag + "KS p > 0.01", r.ks_p_value && *r.ks_p_value > 0.01,
          Checks::fmt("D %.4f p %.4f", r.ks_statistic, r.ks_p_value.value_or(-1.0)));
    c.add(tag + "runtime < 15 min", seconds(t0) < 900.0, Checks::fmt("%.1f s", seconds(t0)));
  }
}

// ------------------------------------------------------------------ AC6

void hausdorff_convergence(Checks& c) {
  const auto t0 = Clock::now();
  const std::vector<std::size_t> ladder{256, 1024, 4096};
  struct Case {
    BodyMode mode;
    PNorm p;
    const char* name;
  };
  const Case cases[] = {{BodyMode::projection, PNorm::infinity(), "cube projection"},
                        {BodyMode::section, PNorm::finite(1.0), "cross-polytope section"}};
  for (const auto& k : cases) {
    limits::ExperimentConfig cfg;
    cfg.mode = k.mode;
    cfg.p = k.p;
    cfg.m = 2;
    cfg.replicates = 50;
    const auto r = limits::hausdorff_experiment(cfg, ladder);
    std::string medians;
    for (const auto& row : r.rows) medians += Checks::fmt("%zu:%.5g ", row.n, row.median);
    const bool decreasing = r.rows[0].median > r.rows[1].median && r.rows[1].median > r.rows[2].median;
    c.add(std::string(k.name) + " m=2: medians strictly decreasing", decreasing, medians);
    const double ratio = r.rows[0].median / r.rows[2].median;
    c.add(std::string(k.name) + " m=2: d(256)/d(4096) in [2, 8]", ratio >= 2.0 && ratio <= 8.0, Checks::fmt("ratio %.3f", ratio));
  }
  for (BodyMode mode : {BodyMode::projection, BodyMode::section}) {
    limits::ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.p = PNorm::finite(2.0);
    cfg.m = 2;
    cfg.replicates = 50;
    const auto r = limits::hausdorff_experiment(cfg, ladder);
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row.median);
    c.add("p=2 control " + std::string(to_string(mode)) + ": medians <= 1e-8", worst <= 1e-8, Checks::fmt("max median %.3g", worst));
  }
  c.add("runtime < 10 min", seconds(t0) < 600.0, Checks::fmt("%.1f s", seconds(t0)));
}

// ------------------------------------------------------------------ AC7

void rate_evaluators(Checks& c) {
  auto scaled_identity = [](std::size_t m, double s) {
    linalg::Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) a(i, i) = s;
    return a;
  };
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto r = limits::stiefel_rate_gaussian({scaled_identity(m, 1.0)});
    c.add(Checks::fmt("Stiefel rate of the standard Gaussian is 0, m=%zu", m), r.feasible && r.value == 0.0,
          Checks::fmt("%.17g", r.value));
    for (double s : {0.3, 0.7}) {
      const auto rs = limits::stiefel_rate_gaussian({scaled_identity(m, s * s)});
      c.near(Checks::fmt("Stiefel rate at sigma=%g m=%zu is -(m/2) ln sigma^2", s, m), rs.value, -0.5 * m * std::log(s * s), 1e-10);
    }
    const auto over = limits::stiefel_rate_gaussian({scaled_identity(m, 1.05 * 1.05)});
    c.add(Checks::fmt("Stiefel rate at sigma=1.05 m=%zu is the +inf sentinel", m), !over.feasible && std::isinf(over.value));
  }

  const std::vector<std::vector<double>> points{{1.0, 0.0}, {0.6, 0.8}};
  const double q = 1.5;
  const auto cov = limits::mdp_covariance_matrix(q, points, 2);
  const std::vector<std::vector<double>> inputs{{0.3, -0.2, 0.1, 0.5, -0.4}, {1.0, 1.0, 0.0, 0.0, 0.0}};
  for (const auto& u : inputs) {
    const double base = limits::mdp_rate_quadratic(cov, u).value;
    for (double lambda : {0.1, 2.0, -3.0, 10.0}) {
      std::vector<double> s(u);
      for (double& x : s) x *= lambda;
      c.near_rel(label("MDP rate homogeneity, lambda=%g", lambda), limits::mdp_rate_quadratic(cov, s).value,
                 lambda * lambda * base, 1e-12);
    }
  }

  // Monte Carlo covariance of (|<g,u_i>|^q - a, g_s g_t - delta_st), upper triangle.
  const std::size_t samples = 1000000;
  const std::size_t dim = cov.rows;
  const double a = cf::abs_gaussian_moment(q);
  std::mt19937_64 gen(0xc0ffee);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> x(dim, std::vector<double>(samples));
  for (std::size_t i = 0; i < samples; ++i) {
    const double g0 = normal(gen), g1 = normal(gen);
    for (std::size_t k = 0; k < points.size(); ++k) x[k][i] = std::pow(std::abs(points[k][0] * g0 + points[k][1] * g1), q) - a;
    x[2][i] = g0 * g0 - 1.0;
    x[3][i] = g0 * g1;
    x[4][i] = g1 * g1 - 1.0;
  }
  std::vector<double> mean(dim);
  for (std::size_t k = 0; k < dim; ++k) mean[k] = stats::mean(x[k]);
  std::vector<double> prod(samples);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      for (std::size_t s = 0; s < samples; ++s) prod[s] = (x[i][s] - mean[i]) * (x[j][s] - mean[j]);
      c.within_se(Checks::fmt("MDP covariance entry (%zu,%zu), k=2 m=2 q=1.5", i, j), stats::covariance(x[i], x[j]),
                  std::sqrt(stats::variance(prod) / double(samples)), cov(i, j));
    }
}

// ------------------------------------------------------------------ AC8

struct Curve {
  std::vector<double> param;
  std::vector<double> value;
};

std::vector<Curve> parse_curves(const std::string& csv, std::size_t count) {
  std::vector<Curve> curves(count);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double x = 0, s = 0;
    int m = 0;
    if (std::sscanf(line.c_str(), "%lf,%d,%lf", &x, &m, &s) != 3) continue;
    curves[m - 1].param.push_back(x);
    curves[m - 1].value.push_back(s);
  }
  return curves;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

double max_jump(const Curve& c) {
  double j = 0.0;
  for (std::size_t i = 1; i < c.value.size(); ++i) j = std::max(j, std::abs(c.value[i] - c.value[i - 1]));
  return j;
}

void figure_data(Checks& c) {
  int code = 0;
  const std::vector<std::string> proj{"figure-data", "--mode", "projection", "--m", "1,2,3,4,5", "--lo", "1", "--hi", "3",
                                      "--points", "201", "--format", "csv"};
  const std::string coarse_csv = run_cli(proj, code);
  c.add("projection curves generated", code == 0);
  auto fine_args = proj;
  fine_args[10] = "401";
  const auto coarse = parse_curves(coarse_csv, 5);
  const auto fine = parse_curves(run_cli(fine_args, code), 5);
  for (std::size_t m = 1; m <= 5; ++m) {
    const Curve& cur = coarse[m - 1];
    bool nonneg = true, zero_only_at_two = true, hit_two = false;
    for (std::size_t i = 0; i < cur.param.size(); ++i) {
      nonneg = nonneg && cur.value[i] >= 0.0;
      if (cur.param[i] == 2.0) {
        hit_two = true;
        zero_only_at_two = zero_only_at_two && cur.value[i] == 0.0;
      } else {
        zero_only_at_two = zero_only_at_two && cur.value[i] > 0.0;
      }
    }
    c.add(Checks::fmt("projection m=%zu: nonnegative on q in [1,3]", m), nonneg && cur.param.size() == 201);
    c.add(Checks::fmt("projection m=%zu: zero exactly at q=2 and nowhere else on the grid", m), hit_two && zero_only_at_two);
    // A jump discontinuity would not shrink when the grid is refined.
    const double jc = max_jump(cur), jf = max_jump(fine[m - 1]);
    c.add(Checks::fmt("projection m=%zu: continuous (max step halves under refinement)", m), jf <= 0.6 * jc,
          Checks::fmt("max step %.4g -> %.4g", jc, jf));
  }

  const std::vector<std::string> sec{"figure-data", "--mode", "section", "--m", "1,2,3,4,5", "--lo", "1", "--hi", "2",
                                     "--points", "200", "--right", "open", "--format", "csv"};
  const auto sec_curves = parse_curves(run_cli(sec, code), 5);
  c.add("section curves generated", code == 0);
  for (std::size_t m = 1; m <= 5; ++m) {
    const Curve& cur = sec_curves[m - 1];
    bool positive = true, decreasing = true;
    for (std::size_t i = 0; i < cur.value.size(); ++i) {
      positive = positive && cur.value[i] > 0.0;
      if (i > 0) decreasing = decreasing && cur.value[i] < cur.value[i - 1];
    }
    c.add(Checks::fmt("section m=%zu: positive on p in [1,2)", m), positive && cur.param.back() < 2.0);
    c.add(Checks::fmt("section m=%zu: decreasing towards p=2", m), decreasing);
    const double at_one = cf::asymptotic_variance(BodyMode::section, PNorm::finite(1.0), int(m));
    const double near_two = cf::asymptotic_variance(BodyMode::section, PNorm::finite(2.0 - 1e-6), int(m));
    c.add(Checks::fmt("section m=%zu: sigma^2(2 - 1e-6) <= 1e-8 sigma^2(1)", m), near_two >= 0.0 && near_two <= 1e-8 * at_one,
          Checks::fmt("%.3g vs %.3g", near_two, at_one));
  }

  auto with = [](std::vector<std::string> args, std::initializer_list<std::string> extra) {
    args.insert(args.end(), extra);
    return args;
  };
  int code_a = 0, code_b = 0;
  const std::string a = run_cli(with(proj, {"--threads", "1", "--manifest", "ac8_manifest_a.json"}), code_a);
  const std::string b = run_cli(with(proj, {"--threads", "2", "--manifest", "ac8_manifest_b.json"}), code_b);
  std::string ma, mb;
  for (auto [path, dst] : {std::pair<const char*, std::string*>{"ac8_manifest_a.json", &ma}, {"ac8_manifest_b.json", &mb}}) {
    if (FILE* f = std::fopen(path, "rb")) {
      char buf[4096];
      std::size_t got;
      while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) dst->append(buf, got);
      std::fclose(f);
      std::remove(path);
    }
  }
  const std::string checksum = "fnv1a64:" + cli::fnv1a_hex(a);
  c.add("CSV regenerated byte-identically under a fixed manifest",
        code_a == 0 && code_b == 0 && a == b && a == coarse_csv && ma.find(checksum) != std::string::npos &&
            mb.find(checksum) != std::string::npos,
        checksum);
}

struct Criterion {
  const char* id;
  const char* title;
  void (*run)(Checks&);
};

const Criterion kCriteria[] = {
    {"AC1", "closed-form cross-checks", closed_form_identities},
    {"AC2", "special functions", special_functions},
    {"AC3", "sampler invariants", sampler_invariants},
    {"AC4", "moment oracles", moment_oracles},
    {"AC5", "volume CLT at desk scale", clt_reproduction},
    {"AC6", "Hausdorff convergence", hausdorff_convergence},
    {"AC7", "rate evaluators", rate_evaluators},
    {"AC8", "figure data", figure_data},
};

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0, ran = 0;
  for (const auto& crit : kCriteria) {
    if (!only.empty() && only != crit.id) continue;
    ++ran;
    Checks checks;
    const auto t0 = Clock::now();
    try {
      crit.run(checks);
    } catch (const std::exception& e) {
      checks.add("no exception", false, e.what());
    }
    std::size_t passed = 0;
    for (const auto& ch : checks.items()) {
      passed += ch.pass;
      std::printf("  %s %s: %s%s%s\n", ch.pass ? "ok  " : "FAIL", crit.id, ch.name.c_str(), ch.detail.empty() ? "" : " | ",
                  ch.detail.c_str());
    }
    const bool pass = passed == checks.items().size();
    failed += !pass;
    std::printf("%s %s %s (%zu/%zu checks, %.1f s)\n", pass ? "PASS" : "FAIL", crit.id, crit.title, passed,
                checks.items().size(), seconds(t0));
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}

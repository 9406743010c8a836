#include "lpball/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lpball/errors.hpp"
#include "lpball/specfun.hpp"

namespace lpball::closed_forms {

using specfun::log_gamma;

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int m) {
  if (m < 1) throw DomainError("dimension m must be >= 1");
}

}  // namespace

void require_unit(std::span<const double> u, const char* what, double tol) {
  if (u.empty()) throw DomainError(std::string(what) + ": empty vector");
  double sq = 0.0;
  for (double x : u) sq += x * x;
  if (!(std::abs(std::sqrt(sq) - 1.0) <= tol)) {
    throw DomainError(std::string(what) + ": vector is not a unit vector");
  }
}

double unit_ball_volume(int m) {
  require_dimension(m);
  return std::exp(0.5 * m * std::log(kPi) - log_gamma(1.0 + 0.5 * m));
}

double abs_gaussian_moment(double q) {
  if (!(q > -1.0)) throw DomainError("abs_gaussian_moment: q must be > -1");
  return std::exp(0.5 * q * std::log(2.0) + log_gamma(0.5 * (q + 1.0)) - 0.5 * std::log(kPi));
}

double stiefel_exact_moment(long long n, double q, bool rescaled) {
  if (n < 1) throw DomainError("stiefel_exact_moment: N must be >= 1");
  if (!(q > -1.0)) throw DomainError("stiefel_exact_moment: q must be > -1");
  const double nd = static_cast<double>(n);
  double log_value = log_gamma(0.5 * (q + 1.0)) + log_gamma(0.5 * nd) -
                     log_gamma(0.5 * (nd + q)) - 0.5 * std::log(kPi);
  if (rescaled) log_value += 0.5 * q * std::log(nd);
  return std::exp(log_value);
}

double mixed_abs_moment(double q, double rho) {
  if (!(q >= 1.0)) throw DomainError("mixed_abs_moment: q must be >= 1");
  if (!(std::abs(rho) <= 1.0)) throw DomainError("mixed_abs_moment: |rho| must be <= 1");
  if (std::abs(rho) == 1.0) {
    // E|g|^{2q}
    return std::exp(q * std::log(2.0) + log_gamma(0.5 + q) - 0.5 * std::log(kPi));
  }
  const double prefactor =
      std::exp(q * std::log(2.0) + 2.0 * log_gamma(0.5 * (q + 1.0)) - std::log(kPi));
  return prefactor * specfun::gauss_2f1_diag(q, rho * rho);
}

double quadratic_cross_moment(double q, std::span<const double> u, std::size_t s, std::size_t t) {
  if (!(q > -1.0)) throw DomainError("quadratic_cross_moment: q must be > -1");
  require_unit(u, "quadratic_cross_moment");
  if (s >= u.size() || t >= u.size()) throw DomainError("quadratic_cross_moment: index out of range");
  const double a = abs_gaussian_moment(q);
  if (s == t) return (1.0 + q * u[s] * u[s]) * a;
  return q * u[s] * u[t] * a;
}

double double_sphere_expectation(int m, double p, double q) {
  require_dimension(m);
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("double_sphere_expectation: p, q must be >= 1");
  const double md = m;
  const double log_value = (0.5 * (p + q) + 1.0) * std::log(2.0) + log_gamma(0.5 * (md + p + q)) +
                           log_gamma(0.5 * (1.0 + p)) + log_gamma(0.5 * (1.0 + q)) +
                           log_gamma(1.0 + 0.5 * md) - std::log(md * kPi) -
                           log_gamma(0.5 * (md + p)) - log_gamma(0.5 * (md + q));
  return std::exp(log_value);
}

double asymptotic_mean(const BodySpec& body, int m) {
  require_dimension(m);
  const double md = m;
  const double r = body.exponent();
  const double log_gamma_m = log_gamma(0.5 * md + 1.0);
  if (body.mode() == BodyMode::projection) {
    return std::exp(0.5 * md * std::log(2.0) + md * (r - 1.0) / (2.0 * r) * std::log(kPi) +
                    md / r * log_gamma(0.5 * (r + 1.0)) - log_gamma_m);
  }
  return std::exp(-0.5 * md * std::log(2.0) + md * (r + 1.0) / (2.0 * r) * std::log(kPi) -
                  md / r * log_gamma(0.5 * (r + 1.0)) - log_gamma_m);
}

double asymptotic_variance(const BodySpec& body, int m) {
  require_dimension(m);
  if (body.is_euclidean()) return 0.0;
  const double md = m;
  const double r = body.exponent();
  // (4 Gamma(1+m/2) Gamma(m/2+r) - (2m + r^2) Gamma((m+r)/2)^2) / Gamma((m+r)/2)^2
  const double bracket =
      4.0 * std::exp(log_gamma(1.0 + 0.5 * md) + log_gamma(0.5 * md + r) -
                     2.0 * log_gamma(0.5 * (md + r))) -
      (2.0 * md + r * r);
  const double log_a = 0.5 * r * std::log(2.0) + log_gamma(0.5 * (r + 1.0));
  const bool projection = body.mode() == BodyMode::projection;
  const double log_pi_power = projection ? (r * md - md) / r * std::log(kPi)
                                         : (r * md + md) / r * std::log(kPi);
  const double log_a_power = (projection ? 2.0 : -2.0) * md / r * log_a;
  const double scale = std::exp(log_pi_power + log_a_power - 2.0 * log_gamma(1.0 + 0.5 * md));
  return md * scale * bracket / (2.0 * r * r);
}

double limit_radius(const BodySpec& body) {
  const double r = body.exponent();
  const double log_g = log_gamma(0.5 * (r + 1.0));
  if (body.mode() == BodyMode::projection) {
    return std::exp(0.5 * std::log(2.0) - std::log(kPi) / (2.0 * r) + log_g / r);
  }
  return std::exp(std::log(kPi) / (2.0 * r) - 0.5 * std::log(2.0) - log_g / r);
}

double process_covariance(double q, std::span<const double> u, std::span<const double> v) {
  if (!(q >= 1.0)) throw DomainError("process_covariance: q must be >= 1");
  if (u.size() != v.size()) throw DomainError("process_covariance: dimension mismatch");
  require_unit(u, "process_covariance(u)");
  require_unit(v, "process_covariance(v)");
  const std::size_t m = u.size();
  double diag = 0.0;
  double cross = 0.0;
  double rho = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    diag += v[k] * v[k] * u[k] * u[k];
    rho += u[k] * v[k];
    for (std::size_t l = k + 1; l < m; ++l) cross += u[k] * u[l] * v[k] * v[l];
  }
  const double a = abs_gaussian_moment(q);
  const double correction = 1.0 + 0.5 * q * q * diag + q * q * cross;
  const bool same = std::equal(u.begin(), u.end(), v.begin());
  const double mixed = same ? mixed_abs_moment(q, 1.0)
                            : mixed_abs_moment(q, std::clamp(rho, -1.0, 1.0));
  return mixed - a * a * correction;
}

}  // namespace lpball::closed_forms

#pragma once

#include <cstddef>
#include <span>

#include "lpball/pnorm.hpp"

// Exact moments of Gaussian and Haar-uniform Stiefel vectors, and the
// asymptotic constants of the volume limit theorems built from them.
namespace lpball::closed_forms {

/// kappa_m = pi^{m/2} / Gamma(1 + m/2), the volume of the unit m-ball.
double unit_ball_volume(int m);

/// E|g|^q for g ~ N(0, 1), q > -1.
double abs_gaussian_moment(double q);

/// E|v_{i,1}|^q for a column v_i of a uniform element of V_{m,N}. With
/// `rescaled` set, returns N^{q/2} E|v_{i,1}|^q = E|<sqrt(N) v_i, u>|^q.
double stiefel_exact_moment(long long n, double q, bool rescaled = false);

/// E|<g,u><g,v>|^q with rho = <u,v>, via the diagonal 2F1.
double mixed_abs_moment(double q, double rho);

/// E[|<g,u>|^q g_s g_t] for unit u in R^m; s and t are zero-based.
double quadratic_cross_moment(double q, std::span<const double> u, std::size_t s, std::size_t t);

/// E int int |<g,u>|^p |<g,v>|^q sigma(du) sigma(dv) over S^{m-1} x S^{m-1}.
double double_sphere_expectation(int m, double p, double q);

/// Centre mu of the volume CLT.
double asymptotic_mean(const BodySpec& body, int m);
/// Limit variance sigma^2 of the volume CLT; exactly 0 for p = 2.
double asymptotic_variance(const BodySpec& body, int m);
/// Radius of the Euclidean ball the rescaled body converges to.
double limit_radius(const BodySpec& body);

inline double asymptotic_mean(BodyMode mode, PNorm p, int m) {
  return asymptotic_mean(BodySpec::make(mode, p), m);
}
inline double asymptotic_variance(BodyMode mode, PNorm p, int m) {
  return asymptotic_variance(BodySpec::make(mode, p), m);
}
inline double limit_radius(BodyMode mode, PNorm p) { return limit_radius(BodySpec::make(mode, p)); }

/// E[Z(u) Z(v)] of the limiting Gaussian process of
///   N^{-1/2} sum_i (|<sqrt(N) v_i, u>|^q - E|g|^q).
/// Uses the E[Z(u)^2] expression when u and v coincide.
double process_covariance(double q, std::span<const double> u, std::span<const double> v);

/// Throws DomainError unless |‖u‖_2 - 1| <= tol.
void require_unit(std::span<const double> u, const char* what, double tol = 1e-12);

}  // namespace lpball::closed_forms

#pragma once

namespace lpball::specfun {

/// ln Gamma(x) for x > 0. Self-contained; relative error below 1e-13 on
/// [1e-3, 1e6], including the neighbourhoods of the zeros at x = 1 and 2.
double log_gamma(double x);

/// Gamma(x) for x > 0 via exp(log_gamma(x)).
double gamma(double x);

/// Diagonal Gauss hypergeometric function 2F1(-q/2, -q/2; 1/2; x) for
/// q >= 1 and 0 <= x <= 1.
///
/// The power series has nonnegative coefficients and converges at x = 1
/// (c - a - b = q + 1/2). It is summed directly; when the geometric tail
/// bound is not met after a fixed number of terms (x close to 1) the
/// remaining tail is added through the Euler-Maclaurin formula applied to
/// the Gamma-function form of the coefficients.
double gauss_2f1_diag(double q, double x);

/// Closed-form value of gauss_2f1_diag(q, 1) by Gauss summation:
/// Gamma(1/2) Gamma(1/2 + q) / Gamma(1/2 + q/2)^2.
double gauss_2f1_diag_at_one(double q);

}  // namespace lpball::specfun

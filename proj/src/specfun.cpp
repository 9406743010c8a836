#include "lpball/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lpball/errors.hpp"

namespace lpball::specfun {
namespace {

constexpr double kEulerGamma = 0.577215664901532860607;

// zeta(k) - 1 for k = 2..33.
constexpr std::array<double, 32> kZetaMinusOne = {
    0.644934066848226436472,     0.2020569031595942854,
    0.082323233711138191516,     0.0369277551433699263314,
    0.0173430619844491397145,    0.0083492773819228268398,
    0.00407735619794433937869,   0.00200839282608221441785,
    0.000994575127818085337146,  0.000494188604119464558702,
    0.000246086553308048298638,  0.000122713347578489146752,
    0.0000612481350587048292585, 0.0000305882363070204935517,
    0.0000152822594086518717326, 0.0000076371976378997622736,
    0.00000381729326499983985646, 0.00000190821271655393892566,
    9.53962033872796113152e-7,   4.76932986787806463117e-7,
    2.38450502727732990004e-7,   1.19219925965311073068e-7,
    5.96081890512594796124e-8,   2.98035035146522801861e-8,
    1.49015548283650412347e-8,   7.45071178983542949198e-9,
    3.72533402478845705482e-9,   1.8626597235130490064e-9,
    9.31327432419668182872e-10,  4.65662906503378407299e-10,
    2.328311833676505492e-10,    1.16415501727005197759e-10,
};

// ln Gamma(1 + z) for |z| <= 1/2 from the Taylor series at 1:
//   -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k
// with the zeta(k) = 1 part summed in closed form as z - log1p(z).
double log_gamma_1p(double z) {
  double tail = 0.0;
  for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
    const double k = static_cast<double>(i + 2);
    const double sign = ((i + 2) % 2 == 0) ? 1.0 : -1.0;
    tail = tail * z + sign * kZetaMinusOne[i] / k;
  }
  tail *= z * z;
  return -kEulerGamma * z + (z - std::log1p(z)) + tail;
}

double log_gamma_stirling(double x) {
  // Bernoulli terms B_{2k} / (2k (2k-1)), k = 1..8.
  constexpr std::array<double, 8> c = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,        -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) series = series * inv2 + c[i];
  series *= inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double digamma_large(double z) {
  const double inv2 = 1.0 / (z * z);
  return std::log(z) - 0.5 / z -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_legendre_32() {
  static const GaussRule rule = gauss_legendre(32);
  return rule;
}

constexpr std::size_t kDirectTerms = 2048;
constexpr std::size_t kHardCap = 1'000'000;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  }
  if (x < 0.5) return log_gamma_1p(x) - std::log(x);
  if (x <= 1.5) return log_gamma_1p(x - 1.0);
  if (x <= 2.5) {
    const double w = x - 2.0;
    return std::log1p(w) + log_gamma_1p(w);
  }
  if (x < 20.0) {
    // Gamma(x) = (x-1)(x-2)...(x-k) Gamma(x-k) with x-k in (1.5, 2.5].
    double product = 1.0;
    double y = x;
    while (y > 2.5) {
      y -= 1.0;
      product *= y;
    }
    return std::log(product) + log_gamma(y);
  }
  return log_gamma_stirling(x);
}

double gamma(double x) { return std::exp(log_gamma(x)); }

double gauss_2f1_diag_at_one(double q) {
  if (!(q >= 1.0)) throw DomainError("gauss_2f1_diag_at_one: q must be >= 1");
  return std::exp(log_gamma(0.5) + log_gamma(0.5 + q) - 2.0 * log_gamma(0.5 + 0.5 * q));
}

double gauss_2f1_diag(double q, double x) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("gauss_2f1_diag: q must be >= 1, got " + std::to_string(q));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("gauss_2f1_diag: x must lie in [0, 1], got " + std::to_string(x));
  }
  const double a = -0.5 * q;
  const double c = 0.5;
  // Beyond this index the coefficient ratio (a+j)^2 / ((c+j)(j+1)) is <= 1,
  // so the tail after term j is bounded by t_j x / (1 - x).
  const double ratio_index = std::max(0.0, (0.25 * q * q - 0.5) / (q + 1.5));
  const std::size_t tail_bound_from = static_cast<std::size_t>(std::ceil(std::max(ratio_index, -a)));

  double sum = 1.0;
  double term = 1.0;
  std::size_t j = 0;
  const std::size_t direct_limit = (-a + 2.0 < kDirectTerms) ? kDirectTerms : kHardCap;
  for (; j < direct_limit; ++j) {
    const double jd = static_cast<double>(j);
    term *= (a + jd) * (a + jd) / ((c + jd) * (jd + 1.0)) * x;
    if (term == 0.0) return sum;
    sum += term;
    if (j + 1 >= tail_bound_from && x < 1.0 && term * x / (1.0 - x) <= 1e-17 * sum) {
      return sum;
    }
  }
  if (direct_limit == kHardCap) {
    throw ConvergenceError("gauss_2f1_diag: series did not converge within the term cap");
  }

  // `term` is t_n with n = direct_limit (the last term already added); the
  // remaining tail is sum_{k > n} f(k) with f(k) = t_k x^k for real k.
  const double n = static_cast<double>(direct_limit);
  auto log_coeff = [&](double k) {
    return 2.0 * log_gamma(k + a) - log_gamma(k + c) - log_gamma(k + 1.0);
  };
  const double log_x = std::log(x);
  const double base = log_coeff(n);
  auto f = [&](double k) { return term * std::exp(log_coeff(k) - base + (k - n) * log_x); };

  // Integral over [n, inf) with k = n / w^2.
  const GaussRule& rule = gauss_legendre_32();
  constexpr int kPanels = 4;
  double integral = 0.0;
  for (int panel = 0; panel < kPanels; ++panel) {
    const double lo = static_cast<double>(panel) / kPanels;
    const double hi = static_cast<double>(panel + 1) / kPanels;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double w = mid + half * rule.nodes[i];
      integral += half * rule.weights[i] * f(n / (w * w)) * 2.0 * n / (w * w * w);
    }
  }
  const double dlog = 2.0 * digamma_large(n + a) - digamma_large(n + c) -
                      digamma_large(n + 1.0) + log_x;
  // Euler-Maclaurin: sum_{k>=n} f(k) = int_n^inf f + f(n)/2 - f'(n)/12 + ...
  const double tail_from_n = integral + 0.5 * term - term * dlog / 12.0;
  const double result = sum + tail_from_n - term;
  if (!std::isfinite(result)) {
    throw ConvergenceError("gauss_2f1_diag: tail estimate is not finite");
  }
  return result;
}

}  // namespace lpball::specfun

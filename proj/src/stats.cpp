#include "lpball/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lpball/errors.hpp"

namespace lpball::stats {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 32) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of an empty sample");
  return pairwise_sum(x) / static_cast<double>(x.size());
}

namespace {
double central_sum(std::span<const double> x, double centre, int power) {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = std::pow(x[i] - centre, power);
  return pairwise_sum(d);
}
}  // namespace

double variance(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("variance needs at least two values");
  return central_sum(x, mean(x), 2) / static_cast<double>(x.size() - 1);
}

double skewness(std::span<const double> x) {
  if (x.size() < 3) throw DomainError("skewness needs at least three values");
  const double mu = mean(x);
  const double n = static_cast<double>(x.size());
  const double m2 = central_sum(x, mu, 2) / n;
  const double m3 = central_sum(x, mu, 3) / n;
  return m3 / std::pow(m2, 1.5);
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("covariance needs two samples of equal size >= 2");
  const double mx = mean(x);
  const double my = mean(y);
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = (x[i] - mx) * (y[i] - my);
  return pairwise_sum(d) / static_cast<double>(x.size() - 1);
}

double quantile(std::span<const double> x, double level) {
  if (x.empty()) throw DomainError("quantile of an empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double h = level * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

}  // namespace lpball::stats

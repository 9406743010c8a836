#pragma once

#include <span>
#include <vector>

// Order-fixed reductions, so that results do not depend on how the values
// were produced.
namespace lpball::stats {

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> x);

double mean(std::span<const double> x);
/// Unbiased sample variance (divides by n - 1).
double variance(std::span<const double> x);
/// m3 / m2^{3/2} with population central moments.
double skewness(std::span<const double> x);
/// Unbiased sample covariance.
double covariance(std::span<const double> x, std::span<const double> y);

/// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile(std::span<const double> x, double level);
double median(std::span<const double> x);

}  // namespace lpball::stats

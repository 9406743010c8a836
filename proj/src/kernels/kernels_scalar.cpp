#include <cmath>

#include "lpball/kernels.hpp"

namespace lpball::kernels::detail {

double abs_power_sum_scalar(const double* rows, std::size_t m, std::size_t n, const double* u,
                            double exponent) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (std::size_t k = 0; k < m; ++k) t += u[k] * rows[k * n + i];
    const double a = std::abs(t);
    if (exponent == 1.0) {
      sum += a;
    } else if (exponent == 2.0) {
      sum += a * a;
    } else {
      sum += std::pow(a, exponent);
    }
  }
  return sum;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace lpball::kernels::detail

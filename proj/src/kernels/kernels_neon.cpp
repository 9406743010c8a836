#include <arm_neon.h>

#include <cmath>

#include "lpball/kernels.hpp"

namespace lpball::kernels::detail {
namespace {

constexpr std::size_t kChunk = 64;

inline float64x2_t project2(const double* rows, std::size_t m, std::size_t n, const double* u,
                            std::size_t i) {
  float64x2_t t = vmulq_n_f64(vld1q_f64(rows + i), u[0]);
  for (std::size_t k = 1; k < m; ++k) t = vfmaq_n_f64(t, vld1q_f64(rows + k * n + i), u[k]);
  return t;
}

inline double project1(const double* rows, std::size_t m, std::size_t n, const double* u,
                       std::size_t i) {
  double t = u[0] * rows[i];
  for (std::size_t k = 1; k < m; ++k) t = __builtin_fma(u[k], rows[k * n + i], t);
  return t;
}

}  // namespace

double abs_power_sum_neon(const double* rows, std::size_t m, std::size_t n, const double* u,
                          double exponent) {
  const std::size_t vec_end = n - n % 4;
  if (exponent == 1.0 || exponent == 2.0) {
    const bool square = exponent == 2.0;
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < vec_end; i += 4) {
      const float64x2_t t0 = project2(rows, m, n, u, i);
      const float64x2_t t1 = project2(rows, m, n, u, i + 2);
      if (square) {
        acc0 = vfmaq_f64(acc0, t0, t0);
        acc1 = vfmaq_f64(acc1, t1, t1);
      } else {
        acc0 = vaddq_f64(acc0, vabsq_f64(t0));
        acc1 = vaddq_f64(acc1, vabsq_f64(t1));
      }
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (std::size_t i = vec_end; i < n; ++i) {
      const double t = project1(rows, m, n, u, i);
      sum += square ? t * t : __builtin_fabs(t);
    }
    return sum;
  }

  double buffer[kChunk];
  double sum = 0.0;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t len = (n - start < kChunk) ? n - start : kChunk;
    const std::size_t len_vec = len - len % 2;
    for (std::size_t j = 0; j < len_vec; j += 2) {
      vst1q_f64(buffer + j, vabsq_f64(project2(rows, m, n, u, start + j)));
    }
    for (std::size_t j = len_vec; j < len; ++j) buffer[j] = __builtin_fabs(project1(rows, m, n, u, start + j));
    for (std::size_t j = 0; j < len; ++j) sum += std::pow(buffer[j], exponent);
  }
  return sum;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  const std::size_t vec_end = n - n % 4;
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < vec_end; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (std::size_t i = vec_end; i < n; ++i) sum = __builtin_fma(a[i], b[i], sum);
  return sum;
}

}  // namespace lpball::kernels::detail

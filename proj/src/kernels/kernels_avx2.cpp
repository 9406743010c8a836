// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "lpball/kernels.hpp"

namespace lpball::kernels::detail {
namespace {

constexpr std::size_t kChunk = 64;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Projection of four consecutive columns onto u.
inline __m256d project4(const double* rows, std::size_t m, std::size_t n, const double* u,
                        std::size_t i) {
  __m256d t = _mm256_mul_pd(_mm256_set1_pd(u[0]), _mm256_loadu_pd(rows + i));
  for (std::size_t k = 1; k < m; ++k) {
    t = _mm256_fmadd_pd(_mm256_set1_pd(u[k]), _mm256_loadu_pd(rows + k * n + i), t);
  }
  return t;
}

inline double project1(const double* rows, std::size_t m, std::size_t n, const double* u,
                       std::size_t i) {
  double t = u[0] * rows[i];
  for (std::size_t k = 1; k < m; ++k) t = __builtin_fma(u[k], rows[k * n + i], t);
  return t;
}

}  // namespace

double abs_power_sum_avx2(const double* rows, std::size_t m, std::size_t n, const double* u,
                          double exponent) {
  const std::size_t vec_end = n - n % 8;
  if (exponent == 1.0 || exponent == 2.0) {
    const bool square = exponent == 2.0;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < vec_end; i += 8) {
      const __m256d t0 = project4(rows, m, n, u, i);
      const __m256d t1 = project4(rows, m, n, u, i + 4);
      if (square) {
        acc0 = _mm256_fmadd_pd(t0, t0, acc0);
        acc1 = _mm256_fmadd_pd(t1, t1, acc1);
      } else {
        acc0 = _mm256_add_pd(acc0, abs_pd(t0));
        acc1 = _mm256_add_pd(acc1, abs_pd(t1));
      }
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (std::size_t i = vec_end; i < n; ++i) {
      const double t = project1(rows, m, n, u, i);
      sum += square ? t * t : __builtin_fabs(t);
    }
    return sum;
  }

  // General exponent: vectorised projections, libm power per element.
  alignas(32) double buffer[kChunk];
  double sum = 0.0;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t len = (n - start < kChunk) ? n - start : kChunk;
    const std::size_t len_vec = len - len % 4;
    for (std::size_t j = 0; j < len_vec; j += 4) {
      _mm256_store_pd(buffer + j, abs_pd(project4(rows, m, n, u, start + j)));
    }
    for (std::size_t j = len_vec; j < len; ++j) buffer[j] = __builtin_fabs(project1(rows, m, n, u, start + j));
    for (std::size_t j = 0; j < len; ++j) sum += std::pow(buffer[j], exponent);
  }
  return sum;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t vec_end = n - n % 8;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < vec_end; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = vec_end; i < n; ++i) sum = __builtin_fma(a[i], b[i], sum);
  return sum;
}

}  // namespace lpball::kernels::detail

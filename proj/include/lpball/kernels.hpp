#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Inner loops over the N columns of a frame. Every kernel has a scalar
// reference and, where the build target supports it, an AVX2 (x86-64) or
// NEON (aarch64) variant chosen at runtime. Variants agree with the scalar
// reference up to summation-order rounding.
namespace lpball::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// True if the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available variant on this CPU.
Isa detect_isa();

/// detect_isa() unless the LPBALL_ISA environment variable names another
/// available variant ("scalar", "avx2", "neon"). Read once per process.
Isa active_isa();

/// sum_{i<n} |sum_{k<m} u[k] * rows[k*n + i]|^exponent.
///
/// `rows` is an m x n row-major block (the frame), `u` has m entries,
/// exponent > 0. Exponents 1 and 2 take multiplication-only paths.
double abs_power_sum(Isa isa, std::span<const double> rows, std::size_t m, std::size_t n,
                     std::span<const double> u, double exponent);

inline double abs_power_sum(std::span<const double> rows, std::size_t m, std::size_t n,
                            std::span<const double> u, double exponent) {
  return abs_power_sum(active_isa(), rows, m, n, u, exponent);
}

/// sum_i a[i] * b[i].
double dot(Isa isa, std::span<const double> a, std::span<const double> b);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(active_isa(), a, b);
}

namespace detail {
double abs_power_sum_scalar(const double* rows, std::size_t m, std::size_t n, const double* u,
                            double exponent);
double dot_scalar(const double* a, const double* b, std::size_t n);
#if defined(LPBALL_HAVE_AVX2_KERNELS)
double abs_power_sum_avx2(const double* rows, std::size_t m, std::size_t n, const double* u,
                          double exponent);
double dot_avx2(const double* a, const double* b, std::size_t n);
#endif
#if defined(LPBALL_HAVE_NEON_KERNELS)
double abs_power_sum_neon(const double* rows, std::size_t m, std::size_t n, const double* u,
                          double exponent);
double dot_neon(const double* a, const double* b, std::size_t n);
#endif
}  // namespace detail

}  // namespace lpball::kernels

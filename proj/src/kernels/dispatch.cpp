#include <cstdlib>
#include <string>

#include "lpball/errors.hpp"
#include "lpball/kernels.hpp"

namespace lpball::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    case Isa::scalar: break;
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(LPBALL_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(LPBALL_HAVE_NEON_KERNELS)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("LPBALL_ISA")) {
      const std::string name(env);
      for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (name == to_string(isa) && isa_available(isa)) return isa;
      }
    }
    return detect_isa();
  }();
  return chosen;
}

double abs_power_sum(Isa isa, std::span<const double> rows, std::size_t m, std::size_t n,
                     std::span<const double> u, double exponent) {
  if (m == 0 || u.size() != m || rows.size() < m * n) {
    throw DomainError("abs_power_sum: inconsistent shapes");
  }
  if (!(exponent > 0.0)) throw DomainError("abs_power_sum: exponent must be positive");
  switch (isa) {
#if defined(LPBALL_HAVE_AVX2_KERNELS)
    case Isa::avx2:
      if (isa_available(Isa::avx2)) return detail::abs_power_sum_avx2(rows.data(), m, n, u.data(), exponent);
      break;
#endif
#if defined(LPBALL_HAVE_NEON_KERNELS)
    case Isa::neon:
      return detail::abs_power_sum_neon(rows.data(), m, n, u.data(), exponent);
#endif
    default:
      break;
  }
  return detail::abs_power_sum_scalar(rows.data(), m, n, u.data(), exponent);
}

double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  switch (isa) {
#if defined(LPBALL_HAVE_AVX2_KERNELS)
    case Isa::avx2:
      if (isa_available(Isa::avx2)) return detail::dot_avx2(a.data(), b.data(), a.size());
      break;
#endif
#if defined(LPBALL_HAVE_NEON_KERNELS)
    case Isa::neon:
      return detail::dot_neon(a.data(), b.data(), a.size());
#endif
    default:
      break;
  }
  return detail::dot_scalar(a.data(), b.data(), a.size());
}

}  // namespace lpball::kernels

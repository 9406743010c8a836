#include "lpball/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lpball/errors.hpp"
#include "lpball/kernels.hpp"
#include "lpball/linalg.hpp"

namespace lpball {

StiefelFrame::StiefelFrame(std::size_t m, std::size_t n, std::vector<double> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (m == 0 || n < m) throw DomainError("StiefelFrame: need 1 <= m <= N");
  if (entries_.size() != m * n) throw DomainError("StiefelFrame: entry count does not match m x N");
}

double StiefelFrame::orthonormality_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = a; b < m_; ++b) {
      const double g = kernels::dot(row(a), row(b));
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

namespace {

std::vector<double> draw_gaussian(std::size_t m, std::size_t n, SeedSpec seed, std::uint64_t substream) {
  rng::NormalStream stream(seed, substream);
  std::vector<double> g(m * n);
  for (double& x : g) x = stream.normal();
  return g;
}

bool gram_is_degenerate(const linalg::SymmetricEigen& eig) {
  return !(eig.values.front() >= 1e-12 * eig.values.back()) || !(eig.values.front() > 0.0);
}

linalg::SymmetricEigen gram_eigen(std::size_t m, std::size_t n, const std::vector<double>& g) {
  linalg::Matrix gram(m, m);
  const std::span<const double> all(g);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      gram(a, b) = gram(b, a) = kernels::dot(all.subspan(a * n, n), all.subspan(b * n, n));
    }
  return linalg::eigen_symmetric(gram);
}

StiefelFrame apply_inverse_sqrt(std::size_t m, std::size_t n, const linalg::SymmetricEigen& eig,
                                std::vector<double> g) {
  if (m == 1) {
    const double scale = 1.0 / std::sqrt(eig.values[0]);
    for (double& x : g) x *= scale;
    return StiefelFrame(1, n, std::move(g));
  }
  const linalg::Matrix w = linalg::apply_spectral(eig, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<double> v(m * n, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    double* out = v.data() + a * n;
    for (std::size_t b = 0; b < m; ++b) {
      const double wab = w(a, b);
      const double* in = g.data() + b * n;
      for (std::size_t i = 0; i < n; ++i) out[i] += wab * in[i];
    }
  }
  return StiefelFrame(m, n, std::move(v));
}

}  // namespace

StiefelFrame orthonormalize_gaussian(std::size_t m, std::size_t n, std::vector<double> gaussian) {
  if (m == 0 || n < m) throw DomainError("orthonormalize_gaussian: need 1 <= m <= N");
  if (gaussian.size() != m * n) throw DomainError("orthonormalize_gaussian: wrong entry count");
  const auto eig = gram_eigen(m, n, gaussian);
  if (gram_is_degenerate(eig)) throw DegenerateMatrix("Gaussian Gram matrix is numerically singular");
  return apply_inverse_sqrt(m, n, eig, std::move(gaussian));
}

StiefelFrame sample_stiefel(std::size_t m, std::size_t n, SeedSpec seed) {
  if (m == 0 || n < m) throw DomainError("sample_stiefel: need 1 <= m <= N");
  for (std::uint64_t substream = 0; substream < 2; ++substream) {
    auto g = draw_gaussian(m, n, seed, substream);
    const auto eig = gram_eigen(m, n, g);
    if (!gram_is_degenerate(eig)) return apply_inverse_sqrt(m, n, eig, std::move(g));
  }
  throw DegenerateMatrix("sample_stiefel: Gram matrix rank deficient after retry");
}

SphereGrid sphere_grid(std::size_t m, std::size_t resolution) {
  if (resolution == 0) throw DomainError("sphere_grid: resolution must be positive");
  SphereGrid grid;
  grid.m = m;
  switch (m) {
    case 1:
      grid.directions = {1.0, -1.0};
      grid.antipode_offset = 1;
      break;
    case 2: {
      grid.directions.resize(2 * resolution);
      for (std::size_t j = 0; j < resolution; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(resolution);
        grid.directions[2 * j] = std::cos(theta);
        grid.directions[2 * j + 1] = std::sin(theta);
      }
      if (resolution % 2 == 0) grid.antipode_offset = resolution / 2;
      break;
    }
    case 3: {
      const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
      const double count = static_cast<double>(resolution);
      grid.directions.resize(3 * resolution);
      auto put = [&](std::size_t j, double z, double phi, double sign) {
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        grid.directions[3 * j] = sign * r * std::cos(phi);
        grid.directions[3 * j + 1] = sign * r * std::sin(phi);
        grid.directions[3 * j + 2] = sign * z;
      };
      if (resolution % 2 == 0) {
        const std::size_t half = resolution / 2;
        for (std::size_t i = 0; i < half; ++i) {
          const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / count;
          const double phi = golden_angle * static_cast<double>(i);
          put(i, z, phi, 1.0);
          put(i + half, z, phi, -1.0);
        }
        grid.antipode_offset = half;
      } else {
        for (std::size_t i = 0; i < resolution; ++i) {
          put(i, 1.0 - (2.0 * static_cast<double>(i) + 1.0) / count, golden_angle * static_cast<double>(i), 1.0);
        }
      }
      break;
    }
    default:
      throw DomainError("sphere_grid: only m in {1, 2, 3} is supported, got m = " + std::to_string(m));
  }
  const std::size_t count = grid.directions.size() / m;
  grid.weights.assign(count, 1.0 / static_cast<double>(count));
  return grid;
}

std::size_t default_grid_resolution(std::size_t m) {
  switch (m) {
    case 1: return 2;
    case 2: return 2048;
    case 3: return 8192;
    default: throw DomainError("default_grid_resolution: unsupported dimension");
  }
}

}  // namespace lpball

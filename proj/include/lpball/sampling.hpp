#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lpball/rng.hpp"

namespace lpball {

/// An m x N matrix with orthonormal rows. Column i is the vector v_i in R^m;
/// the row span is the subspace the frame represents.
class StiefelFrame {
 public:
  StiefelFrame(std::size_t m, std::size_t n, std::vector<double> entries);

  [[nodiscard]] std::size_t m() const { return m_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  /// Row-major m x N entries.
  [[nodiscard]] std::span<const double> entries() const { return entries_; }
  [[nodiscard]] std::span<const double> row(std::size_t k) const {
    return std::span<const double>(entries_).subspan(k * n_, n_);
  }
  [[nodiscard]] double operator()(std::size_t k, std::size_t i) const { return entries_[k * n_ + i]; }

  /// max |V V^T - Id_m| entrywise.
  [[nodiscard]] double orthonormality_defect() const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> entries_;
};

/// Uniform frame V = (G G^T)^{-1/2} G with G an m x N standard Gaussian
/// matrix drawn from `seed`. If G G^T is numerically rank deficient
/// (smallest eigenvalue below 1e-12 times the largest) one redraw from a
/// derived sub-stream is made before DegenerateMatrix is thrown.
StiefelFrame sample_stiefel(std::size_t m, std::size_t n, SeedSpec seed);

/// The same construction from an explicit Gaussian matrix (row-major m x N).
StiefelFrame orthonormalize_gaussian(std::size_t m, std::size_t n, std::vector<double> gaussian);

/// Finite direction set on S^{m-1} with quadrature weights summing to 1.
struct SphereGrid {
  std::size_t m = 0;
  std::vector<double> directions;  // count() x m, row-major
  std::vector<double> weights;
  /// If set, direction (j + offset) mod count() is the antipode of j.
  std::optional<std::size_t> antipode_offset;

  [[nodiscard]] std::size_t count() const { return weights.size(); }
  [[nodiscard]] std::span<const double> direction(std::size_t j) const {
    return std::span<const double>(directions).subspan(j * m, m);
  }
};

/// m = 1: {+1, -1}. m = 2: `resolution` equally spaced angles starting at
/// e_1. m = 3: Fibonacci lattice; for even resolution the upper half of the
/// lattice plus its antipodes. All weights uniform. Other m throw.
SphereGrid sphere_grid(std::size_t m, std::size_t resolution);

/// Default resolutions: 2048 directions for m = 2, 8192 for m = 3.
std::size_t default_grid_resolution(std::size_t m);

}  // namespace lpball

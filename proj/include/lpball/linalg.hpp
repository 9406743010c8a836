#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Dense linear algebra for the small symmetric matrices that show up here:
// Gram matrices of Stiefel samples and the moderate-deviation covariance.
// Backed by Eigen; this header keeps Eigen out of the public interface.
namespace lpball::linalg {

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

Matrix multiply(const Matrix& a, const Matrix& b);
double max_abs_asymmetry(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

SymmetricEigen eigen_symmetric(const Matrix& a);

/// f(A) = V diag(f(lambda)) V^T for symmetric A given its decomposition.
Matrix apply_spectral(const SymmetricEigen& eig, double (*f)(double));

/// Lower Cholesky factor; throws DegenerateMatrix if A is not positive
/// definite.
Matrix cholesky(const Matrix& a);

/// Solves A x = b given the Cholesky factor L of A.
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);

/// Inverse via full-pivot LU; throws DegenerateMatrix if A is singular.
Matrix inverse(const Matrix& a);

}  // namespace lpball::linalg

#include "lpball/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lpball/errors.hpp"

namespace lpball::linalg {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Matrix& a) { return {a.data.data(), Eigen::Index(a.rows), Eigen::Index(a.cols)}; }

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix out(std::size_t(e.rows()), std::size_t(e.cols()));
  Eigen::Map<RowMajor>(out.data.data(), e.rows(), e.cols()) = e;
  return out;
}

void require_square(const Matrix& a, const char* who) {
  if (a.rows != a.cols) throw DomainError(std::string(who) + ": matrix must be square");
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw DomainError("multiply: shape mismatch");
  return from_eigen(view(a) * view(b));
}

double max_abs_asymmetry(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

SymmetricEigen eigen_symmetric(const Matrix& a) {
  require_square(a, "eigen_symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view(a));
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigen_symmetric: eigensolver did not converge");
  // Eigen returns eigenvalues in ascending order.
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {std::vector<double>(values.data(), values.data() + values.size()), from_eigen(solver.eigenvectors())};
}

Matrix apply_spectral(const SymmetricEigen& eig, double (*f)(double)) {
  const Eigen::Index n = Eigen::Index(eig.values.size());
  Eigen::VectorXd fl(n);
  for (Eigen::Index k = 0; k < n; ++k) fl[k] = f(eig.values[std::size_t(k)]);
  const auto v = view(eig.vectors);
  return from_eigen(v * fl.asDiagonal() * v.transpose());
}

Matrix cholesky(const Matrix& a) {
  require_square(a, "cholesky");
  const Eigen::LLT<Eigen::MatrixXd> llt(view(a));
  if (llt.info() != Eigen::Success) throw DegenerateMatrix("cholesky: matrix is not positive definite");
  return from_eigen(llt.matrixL());
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
  if (b.size() != lower.rows) throw DomainError("cholesky_solve: shape mismatch");
  const Eigen::MatrixXd l = view(lower);
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(b.data(), Eigen::Index(b.size()));
  l.triangularView<Eigen::Lower>().solveInPlace(x);
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  return {x.data(), x.data() + x.size()};
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(view(a));
  if (!lu.isInvertible()) throw DegenerateMatrix("inverse: matrix is singular");
  return from_eigen(lu.inverse());
}

}  // namespace lpball::linalg

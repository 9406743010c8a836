#pragma once

#include <stdexcept>
#include <string>

namespace lpball {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// (mode, p) pair outside the range where the body or theorem is defined.
class ModeViolation : public std::invalid_argument {
 public:
  explicit ModeViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix that has to be inverted is numerically singular.
class DegenerateMatrix : public std::runtime_error {
 public:
  explicit DegenerateMatrix(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numerical routine did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lpball

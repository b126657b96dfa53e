#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kronspin {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not satisfy the operation's contract.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A result dimension would overflow std::size_t.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Matrix inversion hit a pivot below the singularity threshold.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Input violates a precondition that is checked numerically (e.g. Hermiticity).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Index outside its permitted range (site numbers, coupling endpoints).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Requested dense form exceeds the dense site cap; use the matrix-free engine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Text or JSON input could not be parsed. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An iterative solver ran out of iterations. Carries its best estimates.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> estimates,
                   std::vector<double> residuals)
      : Error(what), estimates_(std::move(estimates)), residuals_(std::move(residuals)) {}

  const std::vector<double>& estimates() const noexcept { return estimates_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> estimates_;
  std::vector<double> residuals_;
};

}  // namespace kronspin

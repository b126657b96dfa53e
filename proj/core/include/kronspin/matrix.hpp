#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kronspin {

using Complex = std::complex<double>;

/// Dense rectangular matrix of complex doubles, stored row-major.
///
/// Both dimensions are at least one. Entries supplied at construction must be
/// finite; element access through operator() is unchecked.
class ComplexMatrix {
 public:
  /// rows x cols zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of a row-major entry buffer of length rows*cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Row-wise literal, e.g. {{0, 1}, {1, 0}}. All rows must have equal length.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  /// Bitwise entry equality with matching shape.
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Frobenius norm.
double frobenius_norm(const ComplexMatrix& a);

/// Frobenius norm of a - b. Throws ShapeError on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kronspin

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kronspin/matrix.hpp"

namespace kronspin {

/// Default absolute tolerance on Frobenius residuals.
inline constexpr double kDefaultTolerance = 1e-10;

/// (row, col) of a matrix entry, zero-based.
struct IndexPair {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Outcome of one algebraic check.
///
/// For ordinary identities `expect_equal` is true and passed <=> residual <= tolerance.
/// The non-commutativity check sets it to false: there the two sides are
/// expected to differ and passed <=> residual > tolerance.
struct ResidualReport {
  std::string property_name;
  double residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool passed = false;
  bool expect_equal = true;
  std::string note;
  std::optional<IndexPair> witness;
  std::vector<ResidualReport> diagnostics;

  static ResidualReport equality(std::string name, double residual, double tolerance);
};

/// A (x) B via the block rule: result(i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
/// Throws SizingError if a result dimension overflows.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Left-to-right Kronecker chain of one or more factors.
ComplexMatrix kron_chain(std::span<const ComplexMatrix> factors);

/// Checks Kronecker property `index` (1..8) on the given operands.
///
/// Operand layouts:
///   1: {A, B}            A (x) 0 = 0 (x) B = 0, zeros shaped like the partner
///   2: {E1, E2}          E1 (x) E2 = E of the product size
///   3: {A1, A2, B}       (A1 + A2) (x) B = A1 (x) B + A2 (x) B
///   4: {A, B1, B2}       A (x) (B1 + B2) = A (x) B1 + A (x) B2
///   5: {A, B}, {s, t}    sA (x) tB = st (A (x) B)
///   6: {A, B}            (A (x) B)^-1 = A^-1 (x) B^-1; the reversed-order form
///                        B^-1 (x) A^-1 is reported as a diagnostic, together with
///                        its agreement after conjugation by the commutation matrix
///   7: {A1, B1, A2, B2}  (A1 B1) (x) (A2 B2) = (A1 (x) A2)(B1 (x) B2)
///   8: {A, B}            A (x) B != B (x) A unless A and B are proportional
///
/// Throws ShapeError on operand count or shape mismatch and SingularityError
/// when property 6 meets a singular operand.
ResidualReport check_property(int index, std::span<const ComplexMatrix> operands,
                              std::span<const double> scalars = {},
                              double tol = kDefaultTolerance);

/// First (row, col) where A (x) B and B (x) A differ by more than tol, if any.
std::optional<IndexPair> noncommutativity_witness(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  double tol = kDefaultTolerance);

/// Destination of every basis index under the perfect shuffle: index i*n + j
/// maps to j*m + i.
std::vector<std::size_t> shuffle_permutation(std::size_t m, std::size_t n);

/// mn x mn permutation P with kron(B, A) = P kron(A, B) P^T for A m x m, B n x n.
ComplexMatrix commutation_matrix(std::size_t m, std::size_t n);

/// P M P^T for the permutation given as destination indices (no arithmetic).
ComplexMatrix permute_similar(std::span<const std::size_t> perm, const ComplexMatrix& m);

/// D = C^-1 A C. Throws SingularityError for singular C.
ComplexMatrix similarity_transform(const ComplexMatrix& c, const ComplexMatrix& a);

}  // namespace kronspin

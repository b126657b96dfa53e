#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kronspin/matrix.hpp"

namespace kronspin {

/// Pivot magnitude below which a matrix is treated as singular.
inline constexpr double kSingularPivot = 1e-12;

/// Relative tolerance (against ||A||_F) for the Hermiticity precondition of eigh.
inline constexpr double kHermitianTolerance = 1e-10;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex s, const ComplexMatrix& a);
ComplexMatrix conj_transpose(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
inline ComplexMatrix identity(std::size_t n) { return ComplexMatrix::identity(n); }

/// a += s * b, in place.
void add_scaled(ComplexMatrix& a, Complex s, const ComplexMatrix& b);

double trace_abs(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// Partial-pivot Gauss-Jordan inverse. Throws SingularityError when a pivot
/// magnitude falls below kSingularPivot.
ComplexMatrix inverse(const ComplexMatrix& a);

/// ||A - A^H||_F / max(||A||_F, 1).
double hermitian_defect(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix.
///
/// eigenvalues ascend; column k of eigenvectors pairs with eigenvalues[k].
/// `dimension` is the number of eigenvalues held. Partial spectra from the
/// Lanczos solver set `operator_dimension` to the size of the full space.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;
  std::size_t dimension = 0;
  std::size_t operator_dimension = 0;

  bool partial() const noexcept { return dimension != operator_dimension; }

  /// Groups eigenvalues that lie within tol of the running cluster head.
  std::vector<std::pair<double, std::size_t>> multiplicities(double tol = 1e-8) const;
};

/// Hermitian eigensolver.
///
/// Uses cyclic Jacobi rotations up to kJacobiMaxDimension and Householder
/// tridiagonalisation followed by implicit QL above it. Eigenvectors are
/// phase-fixed so that the first component of largest magnitude is real and
/// nonnegative; degenerate eigenvalues are ordered by the index of that
/// component. Throws ContractError for non-Hermitian input.
Spectrum eigh(const ComplexMatrix& a, bool want_vectors = false);

inline constexpr std::size_t kJacobiMaxDimension = 64;

/// The two solver routes, exposed for cross-checking.
Spectrum eigh_jacobi(const ComplexMatrix& a, bool want_vectors);
Spectrum eigh_tridiagonal(const ComplexMatrix& a, bool want_vectors);

/// Eigen-decomposition of a real symmetric tridiagonal matrix by implicit QL.
///
/// `diag` has length m and `offdiag` length m-1 (offdiag[i] couples i and i+1).
/// On return `values` ascend. `tracked_rows` selects which rows of the
/// eigenvector matrix are accumulated; vectors[r][k] is component
/// tracked_rows[r] of eigenvector k.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};
TridiagonalEigen tridiagonal_eigen(std::vector<double> diag, std::vector<double> offdiag,
                                   const std::vector<std::size_t>& tracked_rows);

/// True iff both spectra have the same length and sorted eigenvalues agree
/// pairwise within tol. Spectra of different dimensions compare unequal.
bool spectrum_multiset_equal(const Spectrum& s1, const Spectrum& s2, double tol);

}  // namespace kronspin

#pragma once

#include <array>
#include <string_view>

#include "kronspin/matrix.hpp"

namespace kronspin {

enum class PauliAxis { x, y, z };

inline constexpr std::array<PauliAxis, 3> kPauliAxes{PauliAxis::x, PauliAxis::y, PauliAxis::z};

std::string_view axis_name(PauliAxis axis);

/// Largest site count for which dense 2^n x 2^n operators are built.
inline constexpr int kDenseSiteCap = 12;

/// Standard Pauli matrix: x = [[0,1],[1,0]], y = [[0,-i],[i,0]], z = [[1,0],[0,-1]].
ComplexMatrix pauli(PauliAxis axis);

/// E (x) ... (x) local (x) ... (x) E with `local` in slot `site` (1-based) of n.
/// Throws RangeError for a site outside [1, n] and CapacityError when n
/// exceeds `dense_cap`.
ComplexMatrix lift(const ComplexMatrix& local, int site, int n, int dense_cap = kDenseSiteCap);

/// Two single-site operators placed at distinct sites in one Kronecker chain.
/// Equals lift(first, i, n) * lift(second, j, n).
ComplexMatrix lift_pair(const ComplexMatrix& first, int site_i, const ComplexMatrix& second,
                        int site_j, int n, int dense_cap = kDenseSiteCap);

/// S_axis = 1/2 * sum_k lift(pauli(axis), k, n), with hbar = 1.
ComplexMatrix total_component(PauliAxis axis, int n, int dense_cap = kDenseSiteCap);

/// S^2 = S_x^2 + S_y^2 + S_z^2.
ComplexMatrix total_spin_squared(int n, int dense_cap = kDenseSiteCap);

/// a*b - b*a.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius norm of [h, q].
double conserved_residual(const ComplexMatrix& h, const ComplexMatrix& q);

}  // namespace kronspin

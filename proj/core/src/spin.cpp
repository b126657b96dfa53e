#include "kronspin/spin.hpp"

#include <string>
#include <vector>

#include "kronspin/errors.hpp"
#include "kronspin/kron.hpp"
#include "kronspin/linalg.hpp"

namespace kronspin {

namespace {

void require_sites(int n, int dense_cap) {
  if (n < 1) throw RangeError("site count must be at least 1, got " + std::to_string(n));
  if (n > dense_cap) {
    throw CapacityError("dense operator for " + std::to_string(n) +
                        " sites exceeds the dense cap of " + std::to_string(dense_cap) +
                        " sites; use the matrix-free engine");
  }
}

void require_site(int site, int n) {
  if (site < 1 || site > n) {
    throw RangeError("site " + std::to_string(site) + " outside [1, " + std::to_string(n) + "]");
  }
}

void require_local(const ComplexMatrix& local) {
  if (local.rows() != 2 || local.cols() != 2) {
    throw ShapeError("single-site operators must be 2x2");
  }
}

// Kronecker chain over n slots; slots without an operator hold E.
ComplexMatrix chain(const std::vector<const ComplexMatrix*>& slots) {
  static const ComplexMatrix e2 = ComplexMatrix::identity(2);
  ComplexMatrix acc = slots[0] ? *slots[0] : e2;
  for (std::size_t k = 1; k < slots.size(); ++k) acc = kron(acc, slots[k] ? *slots[k] : e2);
  return acc;
}

}  // namespace

std::string_view axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::x: return "x";
    case PauliAxis::y: return "y";
    case PauliAxis::z: return "z";
  }
  return "?";
}

ComplexMatrix pauli(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  switch (axis) {
    case PauliAxis::x: return {{0.0, 1.0}, {1.0, 0.0}};
    case PauliAxis::y: return {{0.0, -i}, {i, 0.0}};
    case PauliAxis::z: return {{1.0, 0.0}, {0.0, -1.0}};
  }
  throw RangeError("unknown Pauli axis");
}

ComplexMatrix lift(const ComplexMatrix& local, int site, int n, int dense_cap) {
  require_local(local);
  require_site(site, n);
  require_sites(n, dense_cap);
  if (n == 1) return local;
  std::vector<const ComplexMatrix*> slots(static_cast<std::size_t>(n), nullptr);
  slots[static_cast<std::size_t>(site - 1)] = &local;
  return chain(slots);
}

ComplexMatrix lift_pair(const ComplexMatrix& first, int site_i, const ComplexMatrix& second,
                        int site_j, int n, int dense_cap) {
  require_local(first);
  require_local(second);
  require_site(site_i, n);
  require_site(site_j, n);
  if (site_i == site_j) throw RangeError("lift_pair: sites must differ");
  require_sites(n, dense_cap);
  std::vector<const ComplexMatrix*> slots(static_cast<std::size_t>(n), nullptr);
  slots[static_cast<std::size_t>(site_i - 1)] = &first;
  slots[static_cast<std::size_t>(site_j - 1)] = &second;
  return chain(slots);
}

ComplexMatrix total_component(PauliAxis axis, int n, int dense_cap) {
  require_sites(n, dense_cap);
  const ComplexMatrix sigma = pauli(axis);
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix total(dim, dim);
  for (int k = 1; k <= n; ++k) add_scaled(total, 0.5, lift(sigma, k, n, dense_cap));
  return total;
}

ComplexMatrix total_spin_squared(int n, int dense_cap) {
  require_sites(n, dense_cap);
  const ComplexMatrix sx = total_component(PauliAxis::x, n, dense_cap);
  const ComplexMatrix sy = total_component(PauliAxis::y, n, dense_cap);
  const ComplexMatrix sz = total_component(PauliAxis::z, n, dense_cap);
  ComplexMatrix s2 = matmul(sx, sx);
  add_scaled(s2, 1.0, matmul(sy, sy));
  add_scaled(s2, 1.0, matmul(sz, sz));
  return s2;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw ShapeError("commutator: operands must be square of equal dimension");
  }
  return subtract(matmul(a, b), matmul(b, a));
}

double conserved_residual(const ComplexMatrix& h, const ComplexMatrix& q) {
  return frobenius_norm(commutator(h, q));
}

}  // namespace kronspin

#include "kronspin/kron.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kronspin/errors.hpp"
#include "kronspin/linalg.hpp"

namespace kronspin {

namespace {

std::size_t checked_mul(std::size_t x, std::size_t y, const char* what) {
  if (x != 0 && y > std::numeric_limits<std::size_t>::max() / x) {
    throw SizingError(std::string("kron: ") + what + " overflows");
  }
  return x * y;
}

void require_count(int index, std::span<const ComplexMatrix> operands, std::size_t count) {
  if (operands.size() != count) {
    throw ShapeError("property " + std::to_string(index) + " needs " + std::to_string(count) +
                     " operands, got " + std::to_string(operands.size()));
  }
}

void require_same_shape(int index, const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("property " + std::to_string(index) + ": summands must share a shape");
  }
}

bool is_identity(const ComplexMatrix& a) {
  return a.is_square() && a == ComplexMatrix::identity(a.rows());
}

// A and B proportional (rank of {vec A, vec B} at most one), within tol.
bool proportional(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double na = frobenius_norm(a);
  const double nb = frobenius_norm(b);
  if (na <= tol || nb <= tol) return true;
  Complex inner{};
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) inner += std::conj(ea[k]) * eb[k];
  // Distance from B to its projection onto span{A}.
  const Complex coef = inner / (na * na);
  double dist2 = 0.0;
  for (std::size_t k = 0; k < ea.size(); ++k) dist2 += std::norm(eb[k] - coef * ea[k]);
  return std::sqrt(dist2) <= tol;
}

ResidualReport property_zero(std::span<const ComplexMatrix> ops, double tol) {
  require_count(1, ops, 2);
  const ComplexMatrix& a = ops[0];
  const ComplexMatrix& b = ops[1];
  const ComplexMatrix left = kron(a, ComplexMatrix::zero(b.rows(), b.cols()));
  const ComplexMatrix right = kron(ComplexMatrix::zero(a.rows(), a.cols()), b);
  const double residual = std::hypot(frobenius_norm(left), frobenius_norm(right));
  return ResidualReport::equality("property 1: A(x)0 = 0(x)B = 0", residual, tol);
}

ResidualReport property_identity(std::span<const ComplexMatrix> ops, double tol) {
  require_count(2, ops, 2);
  const ComplexMatrix product = kron(ops[0], ops[1]);
  if (!product.is_square()) throw ShapeError("property 2: operands must be square");
  const double residual = frobenius_distance(product, ComplexMatrix::identity(product.rows()));
  auto report = ResidualReport::equality("property 2: E(x)E = E", residual, tol);
  if (!is_identity(ops[0]) || !is_identity(ops[1])) report.note = "operands are not identities";
  return report;
}

ResidualReport property_left_distributive(std::span<const ComplexMatrix> ops, double tol) {
  require_count(3, ops, 3);
  require_same_shape(3, ops[0], ops[1]);
  const ComplexMatrix lhs = kron(add(ops[0], ops[1]), ops[2]);
  const ComplexMatrix rhs = add(kron(ops[0], ops[2]), kron(ops[1], ops[2]));
  return ResidualReport::equality("property 3: (A1+A2)(x)B = A1(x)B + A2(x)B",
                                  frobenius_distance(lhs, rhs), tol);
}

ResidualReport property_right_distributive(std::span<const ComplexMatrix> ops, double tol) {
  require_count(4, ops, 3);
  require_same_shape(4, ops[1], ops[2]);
  const ComplexMatrix lhs = kron(ops[0], add(ops[1], ops[2]));
  const ComplexMatrix rhs = add(kron(ops[0], ops[1]), kron(ops[0], ops[2]));
  return ResidualReport::equality("property 4: A(x)(B1+B2) = A(x)B1 + A(x)B2",
                                  frobenius_distance(lhs, rhs), tol);
}

ResidualReport property_scalar(std::span<const ComplexMatrix> ops, std::span<const double> scalars,
                               double tol) {
  require_count(5, ops, 2);
  if (scalars.size() != 2) throw ShapeError("property 5 needs two scalars s, t");
  const double s = scalars[0];
  const double t = scalars[1];
  const ComplexMatrix lhs = kron(scale(s, ops[0]), scale(t, ops[1]));
  const ComplexMatrix rhs = scale(s * t, kron(ops[0], ops[1]));
  return ResidualReport::equality("property 5: sA(x)tB = st(A(x)B)", frobenius_distance(lhs, rhs),
                                  tol);
}

ResidualReport property_inverse(std::span<const ComplexMatrix> ops, double tol) {
  require_count(6, ops, 2);
  const ComplexMatrix& a = ops[0];
  const ComplexMatrix& b = ops[1];
  if (!a.is_square() || !b.is_square()) throw ShapeError("property 6: operands must be square");
  const ComplexMatrix a_inv = inverse(a);
  const ComplexMatrix b_inv = inverse(b);
  const ComplexMatrix product_inv = inverse(kron(a, b));

  auto report = ResidualReport::equality("property 6: (A(x)B)^-1 = A^-1(x)B^-1",
                                         frobenius_distance(product_inv, kron(a_inv, b_inv)), tol);

  const ComplexMatrix reversed = kron(b_inv, a_inv);
  auto literal = ResidualReport::equality("property 6 (reversed order): (A(x)B)^-1 = B^-1(x)A^-1",
                                          frobenius_distance(product_inv, reversed), tol);
  literal.note = "reversed-order form; fails in general";
  report.diagnostics.push_back(std::move(literal));

  const auto perm = shuffle_permutation(a.rows(), b.rows());
  auto shuffled = ResidualReport::equality(
      "property 6 (reversed order, shuffled): B^-1(x)A^-1 = P (A(x)B)^-1 P^T",
      frobenius_distance(reversed, permute_similar(perm, product_inv)), tol);
  report.diagnostics.push_back(std::move(shuffled));
  return report;
}

ResidualReport property_mixed_product(std::span<const ComplexMatrix> ops, double tol) {
  require_count(7, ops, 4);
  const ComplexMatrix& a1 = ops[0];
  const ComplexMatrix& b1 = ops[1];
  const ComplexMatrix& a2 = ops[2];
  const ComplexMatrix& b2 = ops[3];
  const ComplexMatrix lhs = kron(matmul(a1, b1), matmul(a2, b2));
  const ComplexMatrix rhs = matmul(kron(a1, a2), kron(b1, b2));
  return ResidualReport::equality("property 7: (A1 B1)(x)(A2 B2) = (A1(x)A2)(B1(x)B2)",
                                  frobenius_distance(lhs, rhs), tol);
}

ResidualReport property_noncommutative(std::span<const ComplexMatrix> ops, double tol) {
  require_count(8, ops, 2);
  const ComplexMatrix& a = ops[0];
  const ComplexMatrix& b = ops[1];
  const ComplexMatrix ab = kron(a, b);
  const ComplexMatrix ba = kron(b, a);

  ResidualReport report;
  report.property_name = "property 8: A(x)B != B(x)A";
  report.tolerance = tol;
  report.residual = frobenius_distance(ab, ba);
  report.witness = noncommutativity_witness(a, b, tol);

  const bool both_identity = is_identity(a) && is_identity(b);
  const bool scalar_factor = (a.rows() == 1 && a.cols() == 1) || (b.rows() == 1 && b.cols() == 1);
  const bool expect_commute = both_identity || scalar_factor || proportional(a, b, tol);
  report.expect_equal = expect_commute;
  if (report.witness) {
    report.passed = !expect_commute;
    report.note = "non-commuting, first differing entry (" + std::to_string(report.witness->row) +
                  ", " + std::to_string(report.witness->col) + ")";
  } else {
    report.passed = expect_commute;
    if (both_identity) {
      report.note = "commute (identity case)";
    } else if (expect_commute) {
      report.note = scalar_factor ? "commute (scalar factor)" : "commute (proportional operands)";
    } else {
      report.note = "commute although operands are not proportional";
    }
  }
  return report;
}

}  // namespace

ResidualReport ResidualReport::equality(std::string name, double residual, double tolerance) {
  ResidualReport r;
  r.property_name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.expect_equal = true;
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = checked_mul(a.rows(), b.rows(), "row count");
  const std::size_t cols = checked_mul(a.cols(), b.cols(), "column count");
  checked_mul(rows, cols, "entry count");
  ComplexMatrix c(rows, cols);
  const std::size_t br = b.rows();
  const std::size_t bc = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < br; ++k) {
      Complex* out = &c(i * br + k, 0);
      const Complex* brow = &b(k, 0);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const Complex aij = a(i, j);
        Complex* block = out + j * bc;
        for (std::size_t l = 0; l < bc; ++l) block[l] = aij * brow[l];
      }
    }
  }
  return c;
}

ComplexMatrix kron_chain(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw ShapeError("kron_chain: no factors");
  ComplexMatrix acc = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) acc = kron(acc, factors[k]);
  return acc;
}

ResidualReport check_property(int index, std::span<const ComplexMatrix> operands,
                              std::span<const double> scalars, double tol) {
  if (!(tol > 0.0)) throw ContractError("check_property: tolerance must be positive");
  switch (index) {
    case 1: return property_zero(operands, tol);
    case 2: return property_identity(operands, tol);
    case 3: return property_left_distributive(operands, tol);
    case 4: return property_right_distributive(operands, tol);
    case 5: return property_scalar(operands, scalars, tol);
    case 6: return property_inverse(operands, tol);
    case 7: return property_mixed_product(operands, tol);
    case 8: return property_noncommutative(operands, tol);
    default: throw RangeError("check_property: index must be in 1..8");
  }
}

std::optional<IndexPair> noncommutativity_witness(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  double tol) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw ShapeError("noncommutativity_witness: operands must be square of equal dimension");
  }
  const ComplexMatrix ab = kron(a, b);
  const ComplexMatrix ba = kron(b, a);
  for (std::size_t r = 0; r < ab.rows(); ++r)
    for (std::size_t c = 0; c < ab.cols(); ++c)
      if (std::abs(ab(r, c) - ba(r, c)) > tol) return IndexPair{r, c};
  return std::nullopt;
}

std::vector<std::size_t> shuffle_permutation(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw ShapeError("shuffle_permutation: dimensions must be positive");
  std::vector<std::size_t> perm(checked_mul(m, n, "commutation size"));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) perm[i * n + j] = j * m + i;
  return perm;
}

ComplexMatrix commutation_matrix(std::size_t m, std::size_t n) {
  const auto perm = shuffle_permutation(m, n);
  ComplexMatrix p(perm.size(), perm.size());
  for (std::size_t src = 0; src < perm.size(); ++src) p(perm[src], src) = 1.0;
  return p;
}

ComplexMatrix permute_similar(std::span<const std::size_t> perm, const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() != perm.size()) {
    throw ShapeError("permute_similar: permutation length must match the square matrix");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(perm[r], perm[c]) = m(r, c);
  return out;
}

ComplexMatrix similarity_transform(const ComplexMatrix& c, const ComplexMatrix& a) {
  if (!c.is_square() || !a.is_square() || c.rows() != a.rows()) {
    throw ShapeError("similarity_transform: C and A must be square of equal dimension");
  }
  return matmul(inverse(c), matmul(a, c));
}

}  // namespace kronspin

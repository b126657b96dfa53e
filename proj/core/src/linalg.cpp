#include <algorithm>
#include <cmath>
#include <string>

#include "kronspin/errors.hpp"
#include "kronspin/linalg.hpp"

namespace kronspin {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* crow = &c(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix c = a;
  auto ec = c.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ec.size(); ++k) ec[k] += eb[k];
  return c;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  ComplexMatrix c = a;
  auto ec = c.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ec.size(); ++k) ec[k] -= eb[k];
  return c;
}

void add_scaled(ComplexMatrix& a, Complex s, const ComplexMatrix& b) {
  require_same_shape(a, b, "add_scaled");
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) ea[k] += s * eb[k];
}

ComplexMatrix scale(Complex s, const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (Complex& z : c.entries()) z *= s;
  return c;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: matrix must be square");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double trace_abs(const ComplexMatrix& a) { return std::abs(trace(a)); }

ComplexMatrix inverse(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("inverse: matrix must be square");
  const std::size_t n = a.rows();
  ComplexMatrix work = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(work(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best < kSingularPivot) {
      throw SingularityError("inverse: pivot magnitude " + std::to_string(best) + " in column " +
                             std::to_string(col) + " below threshold");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(col, j), work(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const Complex inv_pivot = 1.0 / work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) *= inv_pivot;
      inv(col, j) *= inv_pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex factor = work(r, col);
      if (factor == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= factor * work(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

double hermitian_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("hermitian_defect: matrix must be square");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) sum += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(sum) / std::max(frobenius_norm(a), 1.0);
}

std::vector<std::pair<double, std::size_t>> Spectrum::multiplicities(double tol) const {
  std::vector<std::pair<double, std::size_t>> groups;
  for (double v : eigenvalues) {
    if (!groups.empty() && std::abs(v - groups.back().first) <= tol) {
      ++groups.back().second;
    } else {
      groups.emplace_back(v, 1);
    }
  }
  return groups;
}

bool spectrum_multiset_equal(const Spectrum& s1, const Spectrum& s2, double tol) {
  if (s1.eigenvalues.size() != s2.eigenvalues.size()) return false;
  std::vector<double> a = s1.eigenvalues;
  std::vector<double> b = s2.eigenvalues;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(std::abs(a[k] - b[k]) <= tol)) return false;
  }
  return true;
}

}  // namespace kronspin

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kronspin/errors.hpp"
#include "kronspin/linalg.hpp"

namespace kronspin {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiOffDiagonal = 1e-12;
constexpr int kMaxQlIterations = 60;

void require_hermitian(const ComplexMatrix& a) {
  if (!a.is_square()) throw ContractError("eigh: matrix must be square");
  const double defect = hermitian_defect(a);
  if (defect > kHermitianTolerance) {
    throw ContractError("eigh: matrix is not Hermitian (relative defect " +
                        std::to_string(defect) + ")");
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Sorts eigenpairs ascending, fixes eigenvector phases and orders degenerate
// clusters by the index of each vector's dominant component.
Spectrum finalize(std::vector<double> values, std::optional<ComplexMatrix> vectors,
                  double scale) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

  Spectrum out;
  out.dimension = n;
  out.operator_dimension = n;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = values[order[k]];
  if (!vectors) return out;

  const std::size_t rows = vectors->rows();
  std::vector<std::size_t> dominant(n);
  ComplexMatrix sorted(rows, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double mag = std::abs((*vectors)(r, src));
      if (mag > best * (1.0 + 1e-12) + 1e-15) {
        best = mag;
        arg = r;
      }
    }
    const Complex pivot = (*vectors)(arg, src);
    const Complex phase = std::abs(pivot) > 0.0 ? std::conj(pivot) / std::abs(pivot) : 1.0;
    for (std::size_t r = 0; r < rows; ++r) sorted(r, k) = (*vectors)(r, src) * phase;
    sorted(arg, k) = std::abs(pivot);
    dominant[k] = arg;
  }

  // Degenerate clusters: reorder columns by dominant index, keep values ascending.
  const double cluster_tol = 1e-10 * std::max(scale, 1.0);
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && out.eigenvalues[end] - out.eigenvalues[end - 1] <= cluster_tol) ++end;
    if (end - begin > 1) {
      std::vector<std::size_t> cols(end - begin);
      std::iota(cols.begin(), cols.end(), begin);
      std::stable_sort(cols.begin(), cols.end(),
                       [&](std::size_t x, std::size_t y) { return dominant[x] < dominant[y]; });
      ComplexMatrix block(rows, end - begin);
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) block(r, c) = sorted(r, cols[c]);
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) sorted(r, begin + c) = block(r, c);
    }
    begin = end;
  }
  out.eigenvectors = std::move(sorted);
  return out;
}

}  // namespace

Spectrum eigh_jacobi(const ComplexMatrix& input, bool want_vectors) {
  require_hermitian(input);
  const std::size_t n = input.rows();
  // Work on the exactly Hermitian part.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
  std::optional<ComplexMatrix> v;
  if (want_vectors) v = ComplexMatrix::identity(n);

  const double norm = frobenius_norm(a);
  const double threshold = kJacobiOffDiagonal * norm;
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= std::numeric_limits<double>::min()) continue;
        // Rotate the phase of a_pq onto the real axis, then a real rotation.
        const Complex w = std::conj(apq) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = a(k, p);
          const Complex xq = a(k, q) * w;
          a(k, p) = c * xp - s * xq;
          a(k, q) = s * xp + c * xq;
        }
        const Complex wc = std::conj(w);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex yp = a(p, k);
          const Complex yq = a(q, k) * wc;
          a(p, k) = c * yp - s * yq;
          a(q, k) = s * yp + c * yq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v) {
          ComplexMatrix& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex xp = vm(k, p);
            const Complex xq = vm(k, q) * w;
            vm(k, p) = c * xp - s * xq;
            vm(k, q) = s * xp + c * xq;
          }
        }
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_diagonal_norm(a) > threshold) {
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    throw ConvergenceError("eigh: Jacobi sweeps did not converge", diag, {off_diagonal_norm(a)});
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return finalize(std::move(values), std::move(v), norm);
}

TridiagonalEigen tridiagonal_eigen(std::vector<double> d, std::vector<double> offdiag,
                                   const std::vector<std::size_t>& tracked_rows) {
  const int n = static_cast<int>(d.size());
  if (offdiag.size() + 1 != d.size() && !(d.empty() && offdiag.empty())) {
    throw ShapeError("tridiagonal_eigen: off-diagonal length must be one less than diagonal");
  }
  std::vector<double> e(d.size(), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  const std::size_t tracked = tracked_rows.size();
  std::vector<std::vector<double>> z(tracked, std::vector<double>(d.size(), 0.0));
  for (std::size_t r = 0; r < tracked; ++r) {
    if (tracked_rows[r] >= d.size()) throw RangeError("tridiagonal_eigen: tracked row out of range");
    z[r][tracked_rows[r]] = 1.0;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          throw ConvergenceError("tridiagonal_eigen: QL iteration limit reached", d, e);
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < tracked; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  TridiagonalEigen out;
  out.values.resize(d.size());
  out.vectors.assign(tracked, std::vector<double>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t r = 0; r < tracked; ++r) out.vectors[r][k] = z[r][order[k]];
  }
  return out;
}

Spectrum eigh_tridiagonal(const ComplexMatrix& input, bool want_vectors) {
  require_hermitian(input);
  const std::size_t n = input.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
  const double norm = frobenius_norm(a);

  // Householder reduction: step k zeroes a(k+2.., k). Reflector vectors are kept
  // for back-transformation; reflectors[k] has length n-k-1.
  std::vector<std::vector<Complex>> reflectors;
  if (want_vectors) reflectors.resize(n >= 2 ? n - 2 : 0);
  std::vector<Complex> p(n);
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double tail = xnorm2 - std::norm(a(k + 1, k));
    if (tail <= std::numeric_limits<double>::min()) continue;

    const Complex x0 = a(k + 1, k);
    const double xnorm = std::sqrt(xnorm2);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
    const Complex alpha = -phase * xnorm;

    std::vector<Complex> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const Complex& z : v) vnorm2 += std::norm(z);
    const double vnorm = std::sqrt(vnorm2);
    for (Complex& z : v) z /= vnorm;

    // p = A v over the trailing block, K = v^H p, w = p - K v.
    for (std::size_t i = 0; i < m; ++i) {
      Complex sum{};
      const Complex* row = &a(k + 1 + i, k + 1);
      for (std::size_t j = 0; j < m; ++j) sum += row[j] * v[j];
      p[i] = sum;
    }
    Complex kk{};
    for (std::size_t i = 0; i < m; ++i) kk += std::conj(v[i]) * p[i];
    const double kr = kk.real();
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kr * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      Complex* row = &a(k + 1 + i, k + 1);
      const Complex vi2 = 2.0 * v[i];
      const Complex wi2 = 2.0 * w[i];
      for (std::size_t j = 0; j < m; ++j) {
        row[j] -= vi2 * std::conj(w[j]) + wi2 * std::conj(v[j]);
      }
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
    if (want_vectors) reflectors[k] = std::move(v);
  }

  // Unitary diagonal scaling turns the complex tridiagonal into a real one.
  std::vector<double> diag(n);
  std::vector<double> off(n > 0 ? n - 1 : 0);
  std::vector<Complex> delta(n, Complex{1.0});
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex e = a(i + 1, i);
    const double mag = std::abs(e);
    off[i] = mag;
    delta[i + 1] = mag > 0.0 ? delta[i] * (e / mag) : delta[i];
  }

  std::vector<std::size_t> tracked;
  if (want_vectors) {
    tracked.resize(n);
    std::iota(tracked.begin(), tracked.end(), std::size_t{0});
  }
  TridiagonalEigen te = tridiagonal_eigen(std::move(diag), std::move(off), tracked);

  std::optional<ComplexMatrix> vectors;
  if (want_vectors) {
    ComplexMatrix z(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) z(r, c) = delta[r] * te.vectors[r][c];
    // Apply H_0 H_1 ... H_{n-3} from the left, innermost first.
    for (std::size_t kk = reflectors.size(); kk-- > 0;) {
      const std::vector<Complex>& v = reflectors[kk];
      if (v.empty()) continue;
      const std::size_t off0 = kk + 1;
      std::vector<Complex> proj(n, Complex{});
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex vc = std::conj(v[i]);
        const Complex* row = &z(off0 + i, 0);
        for (std::size_t c = 0; c < n; ++c) proj[c] += vc * row[c];
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex vi2 = 2.0 * v[i];
        Complex* row = &z(off0 + i, 0);
        for (std::size_t c = 0; c < n; ++c) row[c] -= vi2 * proj[c];
      }
    }
    vectors = std::move(z);
  }
  return finalize(std::move(te.values), std::move(vectors), norm);
}

Spectrum eigh(const ComplexMatrix& a, bool want_vectors) {
  if (a.is_square() && a.rows() > kJacobiMaxDimension) return eigh_tridiagonal(a, want_vectors);
  return eigh_jacobi(a, want_vectors);
}

}  // namespace kronspin

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kronspin/errors.hpp"
#include "kronspin/matfree.hpp"

namespace kronspin {

namespace {

constexpr double kHermitianProbeTolerance = 1e-8;
constexpr std::size_t kCheckEvery = 5;

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

double norm2(std::span<const Complex> x) {
  double sum = 0.0;
  for (const Complex& z : x) sum += std::norm(z);
  return std::sqrt(sum);
}

// Indices of the k wanted Ritz values within an ascending list of m.
std::vector<std::size_t> wanted(std::size_t m, std::size_t k, Extremal which) {
  const std::size_t count = std::min(k, m);
  std::vector<std::size_t> idx(count);
  for (std::size_t t = 0; t < count; ++t) idx[t] = which == Extremal::lowest ? t : m - count + t;
  return idx;
}

}  // namespace

Spectrum lanczos_extremal(const KronSum& op, const LanczosOptions& opt) {
  if (opt.k == 0) throw ContractError("lanczos_extremal: k must be positive");
  if (!(opt.tol > 0.0)) throw ContractError("lanczos_extremal: tol must be positive");
  if (opt.max_iter == 0) throw ContractError("lanczos_extremal: max_iter must be positive");

  const double defect = hermitian_probe(op, 2, opt.seed ^ 0x9e3779b97f4a7c15ULL, opt.workers);
  if (defect > kHermitianProbeTolerance) {
    throw ContractError("lanczos_extremal: operator is not Hermitian (probe defect " +
                        std::to_string(defect) + ")");
  }

  const std::size_t dim = op.dimension();
  const std::size_t max_basis = std::min<std::size_t>(opt.max_iter, dim);

  std::vector<std::vector<Complex>> basis;
  std::vector<double> alpha;
  std::vector<double> beta;

  {
    StateVector start = StateVector::random(op.n_sites(), opt.seed);
    const double nrm = start.norm();
    std::vector<Complex> v(start.amplitudes().begin(), start.amplitudes().end());
    for (Complex& z : v) z /= nrm;
    basis.push_back(std::move(v));
  }

  std::vector<Complex> w(dim);
  std::vector<double> best_values;
  std::vector<double> best_residuals;
  double op_norm_est = 0.0;

  for (std::size_t j = 0; j < max_basis; ++j) {
    std::fill(w.begin(), w.end(), Complex{});
    matvec_accumulate(op, basis[j], w, opt.workers);
    const double a = inner(basis[j], w).real();
    alpha.push_back(a);

    // Full reorthogonalisation, two classical Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) axpy(-inner(q, w), q, w);
    }
    const double b = norm2(w);

    const std::size_t m = alpha.size();
    const bool last = (j + 1 == max_basis);
    const bool check = last || (m % kCheckEvery == 0) || m <= opt.k;

    const double scale = std::max(op_norm_est, std::abs(a));
    const bool invariant = b <= 1e-13 * std::max(scale, 1e-300) || b == 0.0;
    if (check || invariant) {
      TridiagonalEigen te = tridiagonal_eigen(alpha, beta, {m - 1});
      for (double theta : te.values) op_norm_est = std::max(op_norm_est, std::abs(theta));
      const auto idx = wanted(m, opt.k, opt.which);
      best_values.clear();
      best_residuals.clear();
      bool converged = idx.size() == std::min(opt.k, dim);
      for (std::size_t t : idx) {
        const double res = invariant ? 0.0 : std::abs(b * te.vectors[0][t]);
        best_values.push_back(te.values[t]);
        best_residuals.push_back(res);
        if (res > opt.tol * std::max(op_norm_est, 1e-300)) converged = false;
      }
      if (invariant || converged) break;
    }
    if (last) {
      throw ConvergenceError("lanczos_extremal: no convergence after " + std::to_string(m) +
                                 " iterations",
                             best_values, best_residuals);
    }
    beta.push_back(b);
    std::vector<Complex> next(w.begin(), w.end());
    for (Complex& z : next) z /= b;
    basis.push_back(std::move(next));
  }

  const std::size_t m = alpha.size();
  if (basis.size() > m) basis.resize(m);
  std::vector<std::size_t> all_rows;
  if (opt.want_vectors) {
    all_rows.resize(m);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  }
  beta.resize(m - 1);
  TridiagonalEigen te = tridiagonal_eigen(alpha, beta, all_rows);
  const auto idx = wanted(m, opt.k, opt.which);

  Spectrum out;
  out.operator_dimension = dim;
  out.dimension = idx.size();
  for (std::size_t t : idx) out.eigenvalues.push_back(te.values[t]);
  if (opt.want_vectors) {
    ComplexMatrix vecs(dim, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (std::size_t r = 0; r < m; ++r) {
        const double s = te.vectors[r][idx[c]];
        for (std::size_t k = 0; k < dim; ++k) vecs(k, c) += s * basis[r][k];
      }
    }
    out.eigenvectors = std::move(vecs);
  }
  return out;
}

}  // namespace kronspin

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "kronspin/errors.hpp"
#include "kronspin/kron.hpp"
#include "kronspin/linalg.hpp"
#include "kronspin/spin.hpp"
#include "oracles.hpp"

using namespace kronspin;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix reconstruct(const Spectrum& s) {
  const ComplexMatrix& v = *s.eigenvectors;
  ComplexMatrix lambda(s.dimension, s.dimension);
  for (std::size_t k = 0; k < s.dimension; ++k) lambda(k, k) = s.eigenvalues[k];
  return matmul(matmul(v, lambda), conj_transpose(v));
}

}  // namespace

TEST(matrix, rejects_bad_shapes_and_entries) {
  EXPECT_THROW(ComplexMatrix(0, 3), ShapeError);
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex{NAN, 0.0}}), ContractError);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex{0.0, INFINITY}}), ContractError);
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), ShapeError);
}

TEST(matmul, examples) {
  std::mt19937_64 rng(7);
  const ComplexMatrix a = oracle::random_matrix(3, 3, rng);
  EXPECT_EQ(matmul(identity(3), a), a);

  const ComplexMatrix sx = pauli(PauliAxis::x);
  EXPECT_EQ(matmul(sx, sx), identity(2));

  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_EQ(matmul(m, swap), (ComplexMatrix{{2.0, 1.0}, {4.0, 3.0}}));

  EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
}

TEST(elementwise, add_scale_conj_transpose) {
  std::mt19937_64 rng(8);
  const ComplexMatrix a = oracle::random_matrix(2, 3, rng);
  EXPECT_EQ(add(a, ComplexMatrix::zero(2, 3)), a);
  EXPECT_EQ(scale(2.0, identity(2)), (ComplexMatrix{{2.0, 0.0}, {0.0, 2.0}}));
  const ComplexMatrix sy = pauli(PauliAxis::y);
  EXPECT_EQ(conj_transpose(sy), sy);
  EXPECT_THROW(add(a, ComplexMatrix(3, 2)), ShapeError);

  const ComplexMatrix ct = conj_transpose(a);
  ASSERT_EQ(ct.rows(), 3u);
  EXPECT_EQ(ct(2, 1), std::conj(a(1, 2)));
}

TEST(inverse, examples) {
  EXPECT_EQ(inverse(identity(4)), identity(4));
  const ComplexMatrix d{{2.0, 0.0}, {0.0, 4.0}};
  EXPECT_EQ(inverse(d), (ComplexMatrix{{0.5, 0.0}, {0.0, 0.25}}));

  std::mt19937_64 rng(11);
  const ComplexMatrix a = oracle::random_well_conditioned(5, rng);
  EXPECT_LT(frobenius_distance(matmul(inverse(a), a), identity(5)), 1e-10);
}

TEST(inverse, singular_and_nonsquare) {
  EXPECT_THROW(inverse(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}), SingularityError);
  EXPECT_THROW(inverse(ComplexMatrix::zero(3, 3)), SingularityError);
  EXPECT_THROW(inverse(ComplexMatrix(2, 3)), ShapeError);
}

TEST(inverse, involution_on_random_inputs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const ComplexMatrix a = oracle::random_well_conditioned(n, rng);
    EXPECT_LT(frobenius_distance(inverse(inverse(a)), a), 1e-8);
    EXPECT_LT(frobenius_distance(inverse(a), oracle::inverse(a)), 1e-10);
  }
}

TEST(eigh, closed_form_examples) {
  const Spectrum id = eigh(identity(4));
  EXPECT_EQ(id.eigenvalues, (std::vector<double>{1, 1, 1, 1}));

  const Spectrum z = eigh(pauli(PauliAxis::z));
  ASSERT_EQ(z.eigenvalues.size(), 2u);
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-14);

  ComplexMatrix heis(4, 4);
  for (PauliAxis a : kPauliAxes) add_scaled(heis, 1.0, kron(pauli(a), pauli(a)));
  const Spectrum s = eigh(heis);
  const std::vector<double> expected{-3, 1, 1, 1};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], expected[k], 1e-12);
}

TEST(eigh, rejects_non_hermitian) {
  EXPECT_THROW(eigh(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), ContractError);
  EXPECT_THROW(eigh(ComplexMatrix{{0.0, I}, {I, 0.0}}), ContractError);
  EXPECT_THROW(eigh(ComplexMatrix(2, 3)), ContractError);
}

TEST(eigh, both_routes_match_oracle_and_reconstruct) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 40u, 70u, 130u}) {
    const ComplexMatrix h = oracle::random_hermitian(n, rng);
    const std::vector<double> ref = oracle::eigenvalues(h);
    for (const Spectrum& s : {eigh_jacobi(h, true), eigh_tridiagonal(h, true), eigh(h, true)}) {
      ASSERT_EQ(s.eigenvalues.size(), n);
      EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(s.eigenvalues[k], ref[k], 1e-10) << n;

      const ComplexMatrix& v = *s.eigenvectors;
      EXPECT_LT(frobenius_distance(matmul(conj_transpose(v), v), identity(n)), 1e-8);
      EXPECT_LE(frobenius_distance(reconstruct(s), h), 1e-8 * frobenius_norm(h));
    }
  }
}

TEST(eigh, eigenpairs_satisfy_definition) {
  std::mt19937_64 rng(22);
  const ComplexMatrix h = oracle::random_hermitian(12, rng);
  const Spectrum s = eigh(h, true);
  const ComplexMatrix& v = *s.eigenvectors;
  for (std::size_t k = 0; k < 12; ++k) {
    double res = 0.0;
    for (std::size_t r = 0; r < 12; ++r) {
      Complex hv{};
      for (std::size_t c = 0; c < 12; ++c) hv += h(r, c) * v(c, k);
      res += std::norm(hv - s.eigenvalues[k] * v(r, k));
    }
    EXPECT_LT(std::sqrt(res), 1e-8);
  }
}

TEST(eigh, phase_convention_and_degenerate_ordering) {
  // Degenerate triplet of the two-spin exchange operator.
  ComplexMatrix heis(4, 4);
  for (PauliAxis a : kPauliAxes) add_scaled(heis, 1.0, kron(pauli(a), pauli(a)));
  for (const Spectrum& s : {eigh_jacobi(heis, true), eigh_tridiagonal(heis, true)}) {
    const ComplexMatrix& v = *s.eigenvectors;
    std::vector<std::size_t> dominant;
    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t arg = 0;
      for (std::size_t r = 1; r < 4; ++r)
        if (std::abs(v(r, k)) > std::abs(v(arg, k)) * (1 + 1e-9)) arg = r;
      EXPECT_GE(v(arg, k).real(), 0.0);
      EXPECT_NEAR(v(arg, k).imag(), 0.0, 1e-14);
      dominant.push_back(arg);
    }
    EXPECT_TRUE(std::is_sorted(dominant.begin() + 1, dominant.end()));
  }
  // Diagonal input: eigenvectors are signed unit vectors made nonnegative.
  const Spectrum d = eigh(ComplexMatrix{{2.0, 0.0}, {0.0, -1.0}}, true);
  EXPECT_EQ(*d.eigenvectors, (ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
}

TEST(eigh, multiplicities) {
  Spectrum s;
  s.eigenvalues = {-1.0, 0.0, 0.0, 1e-12, 2.0};
  s.dimension = s.operator_dimension = 5;
  const auto groups = s.multiplicities(1e-9);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[1].second, 3u);
}

TEST(tridiagonal_eigen, matches_oracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t m = 25;
  std::vector<double> d(m), e(m - 1);
  for (double& x : d) x = dist(rng);
  for (double& x : e) x = dist(rng);
  ComplexMatrix t(m, m);
  for (std::size_t i = 0; i < m; ++i) t(i, i) = d[i];
  for (std::size_t i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = e[i];
  const auto ref = oracle::eigenvalues(t);
  const TridiagonalEigen te = tridiagonal_eigen(d, e, {m - 1});
  for (std::size_t k = 0; k < m; ++k) EXPECT_NEAR(te.values[k], ref[k], 1e-12);
  EXPECT_THROW(tridiagonal_eigen({1.0, 2.0}, {}, {}), ShapeError);
}

TEST(spectrum_multiset_equal, examples) {
  std::mt19937_64 rng(31);
  const ComplexMatrix h = oracle::random_hermitian(3, rng);
  const Spectrum s = eigh(h);
  EXPECT_TRUE(spectrum_multiset_equal(s, s, 1e-12));

  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(2, rng);
    const ComplexMatrix b = oracle::random_hermitian(2, rng);
    EXPECT_TRUE(spectrum_multiset_equal(eigh(kron(a, b)), eigh(kron(b, a)), 1e-8));
  }

  const Spectrum z = eigh(pauli(PauliAxis::z));
  const Spectrum xx = eigh(kron(pauli(PauliAxis::x), pauli(PauliAxis::x)));
  EXPECT_FALSE(spectrum_multiset_equal(z, xx, 1e-8));

  Spectrum shifted = s;
  shifted.eigenvalues[0] += 1e-3;
  EXPECT_FALSE(spectrum_multiset_equal(s, shifted, 1e-8));
}

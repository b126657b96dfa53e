#include <random>

#include "gtest/gtest.h"
#include "kronspin/errors.hpp"
#include "kronspin/kron.hpp"
#include "kronspin/linalg.hpp"
#include "kronspin/spin.hpp"
#include "oracles.hpp"

using namespace kronspin;

namespace {

const ComplexMatrix kSx = pauli(PauliAxis::x);
const ComplexMatrix kSz = pauli(PauliAxis::z);

}  // namespace

TEST(kron, examples) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));

  std::mt19937_64 rng(1);
  const ComplexMatrix a = oracle::random_matrix(2, 2, rng);
  EXPECT_EQ(frobenius_norm(kron(a, ComplexMatrix::zero(2, 2))), 0.0);

  // Block expansion of sigma_x (x) sigma_z by hand.
  const ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  EXPECT_EQ(frobenius_distance(kron(kSx, kSz), expected), 0.0);
}

TEST(kron, dimension_law_and_index_rule) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = oracle::random_matrix(dim(rng), dim(rng), rng);
    const ComplexMatrix b = oracle::random_matrix(dim(rng), dim(rng), rng);
    const ComplexMatrix c = kron(a, b);
    ASSERT_EQ(c.rows(), a.rows() * b.rows());
    ASSERT_EQ(c.cols(), a.cols() * b.cols());
    EXPECT_EQ(c, oracle::kron_by_index(a, b));
  }
}

TEST(kron, chain_is_left_to_right) {
  const std::vector<ComplexMatrix> factors{kSx, identity(2), kSz};
  EXPECT_EQ(kron_chain(factors), kron(kron(kSx, identity(2)), kSz));
  EXPECT_THROW(kron_chain(std::span<const ComplexMatrix>{}), ShapeError);
}

TEST(check_property, identity_pair) {
  const std::vector<ComplexMatrix> ops{identity(2), identity(3)};
  const ResidualReport r = check_property(2, ops);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.note.empty());

  const std::vector<ComplexMatrix> not_identity{kSx, identity(2)};
  EXPECT_FALSE(check_property(2, not_identity).passed);
}

TEST(check_property, mixed_product_random) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < 4; ++k) ops.push_back(oracle::random_matrix(2, 2, rng));
    const ResidualReport r = check_property(7, ops, {}, 1e-12);
    EXPECT_TRUE(r.passed) << r.residual;

    // Brute force both sides through the index oracle and Eigen products.
    const ComplexMatrix lhs = oracle::kron_by_index(oracle::product(ops[0], ops[1]),
                                                    oracle::product(ops[2], ops[3]));
    const ComplexMatrix rhs = oracle::product(oracle::kron_by_index(ops[0], ops[2]),
                                              oracle::kron_by_index(ops[1], ops[3]));
    EXPECT_LT(frobenius_distance(lhs, rhs), 1e-12);
  }
}

TEST(check_property, inverse_forms_on_documented_counterexample) {
  const ComplexMatrix a{{1.0, 1.0}, {0.0, 1.0}};
  const ComplexMatrix b{{1.0, 0.0}, {1.0, 1.0}};
  const std::vector<ComplexMatrix> ops{a, b};
  const ResidualReport r = check_property(6, ops, {}, 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.residual, 1e-12);
  ASSERT_EQ(r.diagnostics.size(), 2u);

  // Oracle: explicit 4x4 inverse through Eigen.
  const ComplexMatrix ab_inv = oracle::inverse(oracle::kron_by_index(a, b));
  const ComplexMatrix reversed = oracle::kron_by_index(oracle::inverse(b), oracle::inverse(a));
  const double literal_residual = frobenius_distance(ab_inv, reversed);
  EXPECT_GT(literal_residual, 1.0);

  const ResidualReport& literal = r.diagnostics[0];
  EXPECT_FALSE(literal.passed);
  EXPECT_NEAR(literal.residual, literal_residual, 1e-12);

  const ResidualReport& shuffled = r.diagnostics[1];
  EXPECT_TRUE(shuffled.passed);
  EXPECT_LT(shuffled.residual, 1e-12);
}

TEST(check_property, singular_operand) {
  const std::vector<ComplexMatrix> ops{ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}, identity(2)};
  EXPECT_THROW(check_property(6, ops), SingularityError);
}

TEST(check_property, operand_errors) {
  std::mt19937_64 rng(4);
  const ComplexMatrix a = oracle::random_matrix(2, 2, rng);
  const std::vector<ComplexMatrix> two{a, a};
  const std::vector<ComplexMatrix> three_bad{a, oracle::random_matrix(3, 2, rng), a};
  EXPECT_THROW(check_property(3, two), ShapeError);
  EXPECT_THROW(check_property(3, three_bad), ShapeError);
  EXPECT_THROW(check_property(5, two), ShapeError);  // scalars missing
  EXPECT_THROW(check_property(0, two), RangeError);
  EXPECT_THROW(check_property(9, two), RangeError);
  const std::vector<ComplexMatrix> mismatched{a, oracle::random_matrix(3, 3, rng),
                                              oracle::random_matrix(2, 2, rng), a};
  EXPECT_THROW(check_property(7, mismatched), ShapeError);
}

TEST(check_property, properties_1_to_5_random) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> scalar(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng), q = dim(rng);
    const ComplexMatrix a1 = oracle::random_matrix(m, n, rng);
    const ComplexMatrix a2 = oracle::random_matrix(m, n, rng);
    const ComplexMatrix b1 = oracle::random_matrix(p, q, rng);
    const ComplexMatrix b2 = oracle::random_matrix(p, q, rng);
    const std::vector<ComplexMatrix> p1{a1, b1};
    const std::vector<ComplexMatrix> p2{identity(m), identity(p)};
    const std::vector<ComplexMatrix> p3{a1, a2, b1};
    const std::vector<ComplexMatrix> p4{a1, b1, b2};
    const std::vector<double> st{scalar(rng), scalar(rng)};
    EXPECT_TRUE(check_property(1, p1).passed);
    EXPECT_TRUE(check_property(2, p2).passed);
    EXPECT_TRUE(check_property(3, p3).passed);
    EXPECT_TRUE(check_property(4, p4).passed);
    EXPECT_TRUE(check_property(5, p1, st).passed);
  }
}

TEST(check_property, noncommutation_report) {
  const std::vector<ComplexMatrix> ids{identity(2), identity(2)};
  const ResidualReport same = check_property(8, ids);
  EXPECT_TRUE(same.passed);
  EXPECT_EQ(same.note, "commute (identity case)");
  EXPECT_FALSE(same.witness.has_value());

  const std::vector<ComplexMatrix> xz{kSx, kSz};
  const ResidualReport diff = check_property(8, xz);
  EXPECT_TRUE(diff.passed);
  EXPECT_FALSE(diff.expect_equal);
  ASSERT_TRUE(diff.witness.has_value());

  const std::vector<ComplexMatrix> proportional{kSx, scale(3.0, kSx)};
  const ResidualReport prop = check_property(8, proportional);
  EXPECT_TRUE(prop.passed);
  EXPECT_EQ(prop.note, "commute (proportional operands)");
}

TEST(noncommutativity_witness, examples) {
  EXPECT_FALSE(noncommutativity_witness(identity(2), identity(2)).has_value());

  // Elementwise scan of both 4x4 products: first differing entry.
  const ComplexMatrix xz = oracle::kron_by_index(kSx, kSz);
  const ComplexMatrix zx = oracle::kron_by_index(kSz, kSx);
  std::optional<IndexPair> first;
  for (std::size_t r = 0; r < 4 && !first; ++r)
    for (std::size_t c = 0; c < 4 && !first; ++c)
      if (xz(r, c) != zx(r, c)) first = IndexPair{r, c};
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(noncommutativity_witness(kSx, kSz), first);
  EXPECT_EQ(*first, (IndexPair{0, 1}));

  std::mt19937_64 rng(6);
  const ComplexMatrix a = oracle::random_matrix(3, 3, rng);
  EXPECT_FALSE(noncommutativity_witness(a, a).has_value());
  EXPECT_THROW(noncommutativity_witness(a, identity(2)), ShapeError);
}

TEST(noncommutativity_witness, distinct_random_pairs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4;
    EXPECT_TRUE(noncommutativity_witness(oracle::random_matrix(n, n, rng),
                                         oracle::random_matrix(n, n, rng))
                    .has_value());
  }
}

TEST(commutation_matrix, examples) {
  EXPECT_EQ(commutation_matrix(1, 3), identity(3));
  EXPECT_EQ(commutation_matrix(4, 1), identity(4));

  // Brute force over basis vectors e_i (x) e_j -> e_j (x) e_i.
  const ComplexMatrix p = commutation_matrix(2, 2);
  EXPECT_EQ(p, (ComplexMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  for (std::size_t m : {2u, 3u}) {
    for (std::size_t n : {2u, 4u}) {
      const ComplexMatrix pmn = commutation_matrix(m, n);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ComplexMatrix ei(m, 1), ej(n, 1);
          ei(i, 0) = 1.0;
          ej(j, 0) = 1.0;
          EXPECT_EQ(matmul(pmn, kron(ei, ej)), kron(ej, ei));
        }
      }
    }
  }

  const ComplexMatrix shuffled = matmul(matmul(p, kron(kSx, kSz)), transpose(p));
  EXPECT_LT(frobenius_distance(shuffled, kron(kSz, kSx)), 1e-15);
}

TEST(commutation_matrix, shuffle_similarity_is_exact) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const ComplexMatrix a = oracle::random_matrix(m, m, rng);
    const ComplexMatrix b = oracle::random_matrix(n, n, rng);
    const ComplexMatrix p = commutation_matrix(m, n);
    EXPECT_EQ(frobenius_distance(matmul(matmul(p, kron(a, b)), transpose(p)), kron(b, a)), 0.0);
    EXPECT_EQ(permute_similar(shuffle_permutation(m, n), kron(a, b)), kron(b, a));
  }
}

TEST(similarity_transform, examples) {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = oracle::random_matrix(4, 4, rng);
  EXPECT_LT(frobenius_distance(similarity_transform(identity(4), a), a), 1e-15);

  const ComplexMatrix x = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix y = oracle::random_matrix(2, 2, rng);
  // P is symmetric here, so C^-1 A C with C = P is P A P^T.
  const ComplexMatrix d = similarity_transform(commutation_matrix(2, 2), kron(x, y));
  EXPECT_LT(frobenius_distance(d, oracle::kron_by_index(y, x)), 1e-14);

  EXPECT_THROW(similarity_transform(ComplexMatrix::zero(2, 2), identity(2)), SingularityError);
  EXPECT_THROW(similarity_transform(identity(3), identity(2)), ShapeError);
}

TEST(similarity_transform, preserves_spectrum) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(4, rng);
    const ComplexMatrix c = oracle::random_well_conditioned(4, rng);
    const ComplexMatrix d = similarity_transform(c, a);
    // D is not Hermitian in general: compare with the general eigenvalue oracle.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(oracle::to_eigen(d));
    std::vector<double> got;
    for (Eigen::Index k = 0; k < 4; ++k) {
      EXPECT_NEAR(solver.eigenvalues()(k).imag(), 0.0, 1e-8);
      got.push_back(solver.eigenvalues()(k).real());
    }
    std::sort(got.begin(), got.end());
    const std::vector<double> expected = eigh(a).eigenvalues;
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(got[k], expected[k], 1e-8);
  }
}

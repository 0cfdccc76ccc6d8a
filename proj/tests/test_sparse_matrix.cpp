#include "dsgc/sparse_matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using dsgc::DenseMatrix;
using dsgc::Entry;
using dsgc::SparseMatrix;

namespace {

DenseMatrix random_dense(Eigen::Index r, Eigen::Index c, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> v(-3, 3);
  DenseMatrix m = DenseMatrix::Zero(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      if (u(rng) < density) m(i, j) = v(rng);
    }
  }
  return m;
}

}  // namespace

TEST(SparseMatrix, DuplicateEntriesAreSummedAndZerosDropped) {
  const auto m = SparseMatrix::from_entries(3, 3, {{0, 1, 2.0}, {0, 1, 3.0}, {2, 2, 1.0}, {2, 2, -1.0}});
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.coeff(0, 1), 5.0);
  EXPECT_EQ(m.coeff(2, 2), 0.0);
}

TEST(SparseMatrix, OutOfRangeEntryThrows) {
  EXPECT_THROW(SparseMatrix::from_entries(2, 2, {{2, 0, 1.0}}), std::out_of_range);
  EXPECT_THROW(SparseMatrix(2, 2).coeff(0, 5), std::out_of_range);
}

TEST(SparseMatrix, ProductsMatchDense) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const DenseMatrix a = random_dense(7, 5, 0.4, rng);
    const DenseMatrix b = random_dense(5, 6, 0.4, rng);
    const auto sa = SparseMatrix::from_dense(a);
    const auto sb = SparseMatrix::from_dense(b);
    EXPECT_TRUE((sa * sb).to_dense().isApprox(a * b) || (a * b).isZero());
    EXPECT_EQ((sa * b), DenseMatrix(a * b));
    EXPECT_EQ(sa.transpose().to_dense(), DenseMatrix(a.transpose()));
  }
}

TEST(SparseMatrix, ShapeMismatchThrows) {
  const SparseMatrix a(2, 3);
  const SparseMatrix b(2, 2);
  EXPECT_THROW(a * a, std::invalid_argument);
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW(a.cwise_product(b), std::invalid_argument);
  EXPECT_THROW(a.power(2), std::invalid_argument);
}

TEST(SparseMatrix, PowerMatchesRepeatedProduct) {
  std::mt19937_64 rng(2);
  const DenseMatrix a = random_dense(6, 6, 0.3, rng);
  const auto s = SparseMatrix::from_dense(a);
  DenseMatrix expect = DenseMatrix::Identity(6, 6);
  for (unsigned e = 0; e <= 5; ++e) {
    EXPECT_EQ(s.power(e).to_dense(), expect) << "exponent " << e;
    expect = expect * a;
  }
}

TEST(SparseMatrix, ElementwiseHelpers) {
  const auto m = SparseMatrix::from_entries(3, 3, {{0, 0, 2.0}, {0, 2, -1.0}, {1, 0, 3.0}, {2, 1, -4.0}});
  EXPECT_EQ(m.without_diagonal().coeff(0, 0), 0.0);
  EXPECT_EQ(m.without_diagonal().nnz(), 3u);
  EXPECT_EQ(m.positive_indicator().nnz(), 2u);
  EXPECT_EQ(m.positive_indicator().coeff(1, 0), 1.0);
  EXPECT_EQ(m.cwise_abs().coeff(2, 1), 4.0);
  EXPECT_EQ(m.row_sums(), dsgc::DenseVector((dsgc::DenseVector(3) << 1.0, 3.0, -4.0).finished()));
  dsgc::DenseVector s(3);
  s << 2.0, 0.0, 1.0;
  const auto scaled = m.scale_rows(s);
  EXPECT_EQ(scaled.coeff(0, 2), -2.0);
  EXPECT_EQ(scaled.coeff(1, 0), 0.0);
  EXPECT_EQ(scaled.nnz(), 3u);
}

TEST(SparseMatrix, SymmetryCheck) {
  EXPECT_TRUE(SparseMatrix::from_entries(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}}).is_symmetric());
  EXPECT_FALSE(SparseMatrix::from_entries(2, 2, {{0, 1, 1.0}}).is_symmetric());
  EXPECT_FALSE(SparseMatrix(2, 3).is_symmetric());
}

TEST(SparseMatrix, EntriesAreRowMajor) {
  const auto m = SparseMatrix::from_entries(2, 3, {{1, 0, 1.0}, {0, 2, 2.0}, {0, 1, 3.0}});
  const std::vector<Entry> expect = {{0, 1, 3.0}, {0, 2, 2.0}, {1, 0, 1.0}};
  EXPECT_EQ(m.entries(), expect);
}

#include <gtest/gtest.h>

#include "foliate/error.hpp"
#include "foliate/matrix.hpp"
#include "oracle.hpp"

using foliate::LinearSolution;
using foliate::Matrix;
using foliate::Rational;
using foliate::Vector;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = oracle::small_rational(rng, 4);
  return m;
}

// Rank-deficient matrices: product of rows x k and k x cols factors.
Matrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  return random_matrix(rng, rows, k) * random_matrix(rng, k, cols);
}

oracle::QMat to_qmat(const Matrix& m) {
  oracle::QMat out(m.rows(), oracle::QVec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).to_mpq();
  return out;
}

Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (int v : row) m(r, c++) = Rational(v);
    ++r;
  }
  return m;
}

}  // namespace

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  auto rng = oracle::stream(2);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + iter % 6;
    const Matrix m = (iter % 3 == 0) ? low_rank(rng, n, n, std::max<std::size_t>(1, n - 1)) : random_matrix(rng, n, n);
    ASSERT_EQ(foliate::determinant(m).to_mpq(), oracle::determinant(to_qmat(m)));
  }
}

TEST(Matrix, RankOfKnownMatrices) {
  EXPECT_EQ(foliate::rank(from_rows({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(foliate::rank(from_rows({{0, 0}, {0, 0}})), 0u);
  EXPECT_EQ(foliate::rank(Matrix::identity(4)), 4u);
  EXPECT_THROW(foliate::determinant(Matrix(2, 3)), foliate::InputError);
}

TEST(Matrix, ReducedRowEchelonIsIdempotentWithUnitPivots) {
  auto rng = oracle::stream(3);
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix m = low_rank(rng, 4, 6, 1 + iter % 4);
    std::vector<std::size_t> pivots;
    const Matrix r = foliate::reduced_row_echelon(m, &pivots);
    EXPECT_EQ(foliate::reduced_row_echelon(r), r);
    EXPECT_EQ(pivots.size(), foliate::rank(m));
    for (std::size_t row = 0; row < pivots.size(); ++row) {
      for (std::size_t other = 0; other < r.rows(); ++other) {
        EXPECT_EQ(r(other, pivots[row]), Rational(other == row ? 1 : 0));
      }
    }
  }
}

TEST(Matrix, NullSpaceVectorsAreIndependentSolutions) {
  auto rng = oracle::stream(4);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t cols = 2 + iter % 6;
    const Matrix m = low_rank(rng, 1 + iter % 5, cols, 1 + iter % 3);
    const auto basis = foliate::null_space(m);
    ASSERT_EQ(basis.size() + foliate::rank(m), cols);  // rank-nullity
    for (const auto& v : basis) ASSERT_TRUE(foliate::is_zero(m * v));
    if (!basis.empty()) {
      Matrix stacked(basis.size(), cols);
      for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) stacked(r, c) = basis[r][c];
      ASSERT_EQ(foliate::rank(stacked), basis.size());
    }
  }
}

TEST(Matrix, SolveClassifiesAndSatisfiesSystems) {
  auto rng = oracle::stream(5);
  int unique = 0, under = 0, inconsistent = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t rows = 1 + iter % 5, cols = 1 + (iter / 5) % 5;
    const Matrix a = (iter % 2) ? random_matrix(rng, rows, cols) : low_rank(rng, rows, cols, 1);
    Vector b(rows);
    const bool consistent_by_construction = iter % 3 != 0;
    if (consistent_by_construction) {
      Vector x(cols);
      for (auto& v : x) v = oracle::small_rational(rng);
      b = a * x;
    } else {
      for (auto& v : b) v = oracle::small_rational(rng);
    }
    const auto s = foliate::solve(a, b);
    switch (s.kind) {
      case LinearSolution::Kind::kInconsistent: {
        ++inconsistent;
        ASSERT_FALSE(consistent_by_construction);
        // Inconsistent iff appending b raises the rank.
        Matrix aug(rows, cols + 1);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) aug(r, c) = a(r, c);
          aug(r, cols) = b[r];
        }
        ASSERT_GT(foliate::rank(aug), foliate::rank(a));
        break;
      }
      case LinearSolution::Kind::kUnique:
        ++unique;
        ASSERT_EQ(a * s.particular, b);
        ASSERT_EQ(foliate::rank(a), cols);
        break;
      case LinearSolution::Kind::kUnderdetermined:
        ++under;
        ASSERT_EQ(a * s.particular, b);
        ASSERT_EQ(s.nullity(), cols - foliate::rank(a));
        for (const auto& d : s.directions) ASSERT_EQ(a * (s.particular + d), b);
        break;
    }
  }
  EXPECT_GT(unique, 0);
  EXPECT_GT(under, 0);
  EXPECT_GT(inconsistent, 0);
}

TEST(Matrix, NegativeDefiniteMatchesSylvesterOracle) {
  auto rng = oracle::stream(6);
  int definite = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + iter % 4;
    const Matrix f = random_matrix(rng, n, n);
    Matrix m = f.transposed() * f;  // positive semidefinite
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = -m(i, j);
    if (iter % 2) m(iter % n, iter % n) += Rational(3);  // sometimes break definiteness
    const bool expected = oracle::negative_definite(to_qmat(m));
    ASSERT_EQ(foliate::is_negative_definite(m), expected);
    definite += expected;
  }
  EXPECT_GT(definite, 0);
  EXPECT_THROW(foliate::is_negative_definite(from_rows({{1, 2}, {3, 4}})), foliate::InputError);
}

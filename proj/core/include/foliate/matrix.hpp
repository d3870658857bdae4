#pragma once

#include <cstddef>
#include <vector>

#include "foliate/rational.hpp"

namespace foliate {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Matrix transposed() const;
  bool is_symmetric() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
Matrix reduced_row_echelon(Matrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& m);
Rational determinant(Matrix m);

/// Basis of {x : m x = 0}, one vector per free column of the RREF.
std::vector<Vector> null_space(const Matrix& m);

/// Solution set of `a x = b`.
struct LinearSolution {
  enum class Kind { kUnique, kUnderdetermined, kInconsistent };

  Kind kind = Kind::kInconsistent;
  Vector particular;              // valid unless kInconsistent
  std::vector<Vector> directions;  // null space basis of `a`

  std::size_t nullity() const noexcept { return directions.size(); }
};

LinearSolution solve(const Matrix& a, const Vector& b);

/// Sylvester's criterion via pivot signs of an unpivoted LDL^T elimination.
/// Requires a symmetric matrix.
bool is_negative_definite(const Matrix& m);

}  // namespace foliate

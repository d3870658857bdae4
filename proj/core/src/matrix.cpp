#include "foliate/matrix.hpp"

#include <utility>

#include "foliate/error.hpp"

namespace foliate {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j).add_product(a(i, k), b(k, j));
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector dimension mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) out[i].add_product(a(i, k), x[k]);
  }
  return out;
}

Matrix reduced_row_echelon(Matrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    }
    const Rational inv = m(lead_row, col).reciprocal();
    for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, col).is_zero()) continue;
      const Rational factor = -m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c).add_product(factor, m(lead_row, c));
    }
    if (pivots) pivots->push_back(col);
    ++lead_row;
  }
  return m;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> pivots;
  reduced_row_echelon(m, &pivots);
  return pivots.size();
}

Rational determinant(Matrix m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    const Rational inv = m(col, col).reciprocal();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Rational factor = -(m(r, col) * inv);
      for (std::size_t c = col; c < n; ++c) m(r, c).add_product(factor, m(col, c));
    }
  }
  return det;
}

std::vector<Vector> null_space(const Matrix& m) {
  std::vector<std::size_t> pivots;
  const Matrix rref = reduced_row_echelon(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rref(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw InputError("right-hand side length does not match matrix rows");
  Matrix augmented(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) augmented(r, c) = a(r, c);
    augmented(r, a.cols()) = b[r];
  }
  std::vector<std::size_t> pivots;
  const Matrix rref = reduced_row_echelon(std::move(augmented), &pivots);

  LinearSolution out;
  if (!pivots.empty() && pivots.back() == a.cols()) {
    out.kind = LinearSolution::Kind::kInconsistent;
    return out;
  }
  out.particular = Vector(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = rref(r, a.cols());
  out.directions = null_space(a);
  out.kind = out.directions.empty() ? LinearSolution::Kind::kUnique : LinearSolution::Kind::kUnderdetermined;
  return out;
}

bool is_negative_definite(const Matrix& m) {
  if (!m.is_symmetric()) throw InputError("definiteness test requires a symmetric matrix");
  // -m is positive definite iff unpivoted elimination on -m yields positive pivots.
  Matrix w(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) w(r, c) = -m(r, c);
  }
  const std::size_t n = w.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (w(k, k).sign() <= 0) return false;
    const Rational inv = w(k, k).reciprocal();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (w(r, k).is_zero()) continue;
      const Rational factor = -(w(r, k) * inv);
      for (std::size_t c = k; c < n; ++c) w(r, c).add_product(factor, w(k, c));
    }
  }
  return n > 0;
}

}  // namespace foliate

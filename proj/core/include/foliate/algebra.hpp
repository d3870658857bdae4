#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "foliate/matrix.hpp"
#include "foliate/rational.hpp"

namespace foliate {

/// One nonzero coefficient of a bracket: [e_i, e_j] contains `coefficient * e_index`.
struct Term {
  std::size_t index = 0;
  Rational coefficient;
};

/// Structure constants of a finite-dimensional algebra in a fixed basis:
/// [e_i, e_j] = sum_k c(i, j, k) e_k. Always antisymmetric in (i, j).
class StructureTensor {
 public:
  /// Dense constructor; `coefficients` is indexed (i * dim + j) * dim + k.
  /// Throws InputError when the table is not antisymmetric.
  StructureTensor(std::size_t dim, std::vector<Rational> coefficients);

  static StructureTensor abelian(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  /// Nonzero terms of [e_i, e_j].
  std::span<const Term> terms(std::size_t i, std::size_t j) const { return support_[i * dim_ + j]; }

  /// [e_i, e_j] as a dense coefficient vector.
  Vector bracket_basis(std::size_t i, std::size_t j) const;

  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  friend bool operator==(const StructureTensor& a, const StructureTensor& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t dim_;
  std::vector<Rational> c_;
  std::vector<std::vector<Term>> support_;
};

/// Accumulates brackets [e_i, e_j] for i != j and fills in the antisymmetric
/// partner. Setting the same unordered pair twice is an error.
class StructureTensorBuilder {
 public:
  explicit StructureTensorBuilder(std::size_t dim);

  StructureTensorBuilder& set(std::size_t i, std::size_t j, const Vector& value);
  StructureTensorBuilder& set(std::size_t i, std::size_t j, std::initializer_list<std::pair<std::size_t, Rational>> terms);

  StructureTensor build() const;

 private:
  std::size_t dim_;
  std::vector<Rational> c_;
  std::vector<bool> assigned_;
};

/// Orthonormal frame of a left-invariant metric: g(e_a, e_b) = eps_a delta_ab.
class MetricFrame {
 public:
  /// Throws InputError unless every entry is +1 or -1.
  explicit MetricFrame(std::vector<int> epsilon);

  static MetricFrame riemannian(std::size_t dim);
  /// Bit i of `mask` set means eps_i = -1.
  static MetricFrame from_mask(std::size_t dim, std::uint64_t mask);

  std::size_t dim() const noexcept { return epsilon_.size(); }
  int epsilon(std::size_t i) const { return epsilon_.at(i); }
  const std::vector<int>& epsilons() const noexcept { return epsilon_; }
  bool is_riemannian() const;

  Rational inner(const Vector& u, const Vector& v) const;

  friend bool operator==(const MetricFrame&, const MetricFrame&) = default;

 private:
  std::vector<int> epsilon_;
};

/// A structure tensor, a metric frame and a split of the basis into a
/// vertical subalgebra and a horizontal orthonormal pair (X, Y).
class FoliationSetup {
 public:
  /// Validates: dims agree, dim >= 3, vertical nonempty, vertical and
  /// horizontal partition the basis, and the vertical span is closed under
  /// the bracket. Throws InputError otherwise.
  FoliationSetup(StructureTensor tensor, MetricFrame frame, std::vector<std::size_t> vertical,
                 std::array<std::size_t, 2> horizontal, std::vector<std::string> labels = {});

  const StructureTensor& tensor() const noexcept { return tensor_; }
  const MetricFrame& frame() const noexcept { return frame_; }
  const std::vector<std::size_t>& vertical() const noexcept { return vertical_; }
  const std::array<std::size_t, 2>& horizontal() const noexcept { return horizontal_; }
  std::size_t dim() const noexcept { return tensor_.dim(); }
  bool is_vertical(std::size_t index) const { return is_vertical_.at(index); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

 private:
  StructureTensor tensor_;
  MetricFrame frame_;
  std::vector<std::size_t> vertical_;
  std::array<std::size_t, 2> horizontal_;
  std::vector<bool> is_vertical_;
  std::vector<std::string> labels_;
};

/// Default labels e0, e1, ...
std::vector<std::string> default_labels(std::size_t dim);

/// Bilinear extension sum_ij u_i v_j [e_i, e_j]. Throws InputError on length mismatch.
Vector bracket(const StructureTensor& tensor, const Vector& u, const Vector& v);
Vector bracket(const FoliationSetup& setup, const Vector& u, const Vector& v);

/// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] for one triple i < j < k.
struct JacobiTriple {
  std::array<std::size_t, 3> indices{};
  Vector residual;
};

struct JacobiResidual {
  std::vector<JacobiTriple> triples;  // every i < j < k, lexicographic
  Rational max_abs;

  bool is_zero() const noexcept { return max_abs.is_zero(); }
  /// First triple with a nonzero residual, if any.
  const JacobiTriple* first_failure() const;
};

JacobiResidual jacobi_residual(const StructureTensor& tensor);

/// Early-exit variant of `jacobi_residual(...).is_zero()`.
bool satisfies_jacobi(const StructureTensor& tensor);

/// True iff [e_a, e_b] lies in span(indices) for all a, b in indices.
bool spans_subalgebra(const StructureTensor& tensor, std::span<const std::size_t> indices);

/// K(a, b) = trace(ad_a o ad_b) on the subalgebra spanned by `indices`,
/// rows and columns ordered as `indices`. Throws InputError if the indices
/// are not closed under the bracket.
Matrix killing_form(const StructureTensor& tensor, std::span<const std::size_t> indices);

/// Nondegenerate Killing form.
bool is_semisimple(const StructureTensor& tensor, std::span<const std::size_t> indices);

/// Semisimple with negative definite Killing form.
bool is_compact_type(const StructureTensor& tensor, std::span<const std::size_t> indices);

}  // namespace foliate

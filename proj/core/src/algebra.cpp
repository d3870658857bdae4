#include "foliate/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "foliate/error.hpp"

namespace foliate {

StructureTensor::StructureTensor(std::size_t dim, std::vector<Rational> coefficients)
    : dim_(dim), c_(std::move(coefficients)) {
  if (dim_ == 0) throw InputError("structure tensor dimension must be positive");
  if (c_.size() != dim_ * dim_ * dim_) {
    throw InputError("structure tensor needs dim^3 = " + std::to_string(dim_ * dim_ * dim_) +
                     " coefficients, got " + std::to_string(c_.size()));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        if ((*this)(i, j, k) != -(*this)(j, i, k)) {
          std::ostringstream msg;
          msg << "structure tensor is not antisymmetric: c[" << i << "][" << j << "][" << k
              << "] = " << (*this)(i, j, k) << " but c[" << j << "][" << i << "][" << k
              << "] = " << (*this)(j, i, k);
          throw InputError(msg.str());
        }
      }
    }
  }
  support_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const auto& v = (*this)(i, j, k);
        if (!v.is_zero()) support_[i * dim_ + j].push_back(Term{k, v});
      }
    }
  }
}

StructureTensor StructureTensor::abelian(std::size_t dim) {
  return StructureTensor(dim, std::vector<Rational>(dim * dim * dim));
}

Vector StructureTensor::bracket_basis(std::size_t i, std::size_t j) const {
  Vector out(dim_);
  for (const auto& t : terms(i, j)) out[t.index] = t.coefficient;
  return out;
}

StructureTensorBuilder::StructureTensorBuilder(std::size_t dim)
    : dim_(dim), c_(dim * dim * dim), assigned_(dim * dim, false) {}

StructureTensorBuilder& StructureTensorBuilder::set(std::size_t i, std::size_t j, const Vector& value) {
  if (i >= dim_ || j >= dim_) throw InputError("bracket index out of range");
  if (i == j) throw InputError("bracket [e_i, e_i] is always zero and cannot be set");
  if (value.size() != dim_) throw InputError("bracket value has wrong length");
  if (assigned_[i * dim_ + j]) {
    throw InputError("bracket [e_" + std::to_string(i) + ", e_" + std::to_string(j) + "] set twice");
  }
  assigned_[i * dim_ + j] = assigned_[j * dim_ + i] = true;
  for (std::size_t k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = value[k];
    c_[(j * dim_ + i) * dim_ + k] = -value[k];
  }
  return *this;
}

StructureTensorBuilder& StructureTensorBuilder::set(
    std::size_t i, std::size_t j, std::initializer_list<std::pair<std::size_t, Rational>> terms) {
  Vector v(dim_);
  for (const auto& [k, coefficient] : terms) {
    if (k >= dim_) throw InputError("bracket term index out of range");
    v[k] += coefficient;
  }
  return set(i, j, v);
}

StructureTensor StructureTensorBuilder::build() const { return StructureTensor(dim_, c_); }

MetricFrame::MetricFrame(std::vector<int> epsilon) : epsilon_(std::move(epsilon)) {
  if (epsilon_.empty()) throw InputError("metric frame must have positive dimension");
  for (std::size_t i = 0; i < epsilon_.size(); ++i) {
    if (epsilon_[i] != 1 && epsilon_[i] != -1) {
      throw InputError("causal character eps_" + std::to_string(i) + " must be +1 or -1, got " +
                       std::to_string(epsilon_[i]));
    }
  }
}

MetricFrame MetricFrame::riemannian(std::size_t dim) { return MetricFrame(std::vector<int>(dim, 1)); }

MetricFrame MetricFrame::from_mask(std::size_t dim, std::uint64_t mask) {
  std::vector<int> eps(dim);
  for (std::size_t i = 0; i < dim; ++i) eps[i] = (mask >> i) & 1U ? -1 : 1;
  return MetricFrame(std::move(eps));
}

bool MetricFrame::is_riemannian() const {
  return std::all_of(epsilon_.begin(), epsilon_.end(), [](int e) { return e == 1; });
}

Rational MetricFrame::inner(const Vector& u, const Vector& v) const {
  if (u.size() != dim() || v.size() != dim()) throw InputError("inner product length mismatch");
  Rational out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i].is_zero() || v[i].is_zero()) continue;
    out += epsilon_[i] > 0 ? u[i] * v[i] : -(u[i] * v[i]);
  }
  return out;
}

std::vector<std::string> default_labels(std::size_t dim) {
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  return labels;
}

FoliationSetup::FoliationSetup(StructureTensor tensor, MetricFrame frame, std::vector<std::size_t> vertical,
                               std::array<std::size_t, 2> horizontal, std::vector<std::string> labels)
    : tensor_(std::move(tensor)),
      frame_(std::move(frame)),
      vertical_(std::move(vertical)),
      horizontal_(horizontal),
      labels_(std::move(labels)) {
  const std::size_t n = tensor_.dim();
  if (frame_.dim() != n) {
    throw InputError("metric frame has dimension " + std::to_string(frame_.dim()) + " but the algebra has " +
                     std::to_string(n));
  }
  if (n < 3) throw InputError("dimension must be at least 3 (vertical subalgebra plus a horizontal pair)");
  if (vertical_.empty()) throw InputError("vertical index set is empty");
  if (vertical_.size() + 2 != n) throw InputError("vertical and horizontal indices must partition the basis");

  std::vector<int> seen(n, 0);
  for (auto v : vertical_) {
    if (v >= n) throw InputError("vertical index " + std::to_string(v) + " out of range");
    ++seen[v];
  }
  for (auto h : horizontal_) {
    if (h >= n) throw InputError("horizontal index " + std::to_string(h) + " out of range");
    ++seen[h];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] != 1) {
      throw InputError("basis index " + std::to_string(i) +
                       (seen[i] == 0 ? " is neither vertical nor horizontal" : " is listed more than once"));
    }
  }
  is_vertical_.assign(n, false);
  for (auto v : vertical_) is_vertical_[v] = true;

  for (auto i : vertical_) {
    for (auto j : vertical_) {
      for (const auto& t : tensor_.terms(i, j)) {
        if (!is_vertical_[t.index]) {
          throw InputError("vertical indices do not span a subalgebra: [e" + std::to_string(i) + ", e" +
                           std::to_string(j) + "] has a component along horizontal e" +
                           std::to_string(t.index));
        }
      }
    }
  }

  if (labels_.empty()) labels_ = default_labels(n);
  if (labels_.size() != n) throw InputError("label count does not match dimension");
}

Vector bracket(const StructureTensor& tensor, const Vector& u, const Vector& v) {
  const std::size_t n = tensor.dim();
  if (u.size() != n || v.size() != n) {
    throw InputError("bracket arguments must have length " + std::to_string(n));
  }
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || i == j) continue;
      const Rational w = u[i] * v[j];
      for (const auto& t : tensor.terms(i, j)) out[t.index].add_product(w, t.coefficient);
    }
  }
  return out;
}

Vector bracket(const FoliationSetup& setup, const Vector& u, const Vector& v) {
  return bracket(setup.tensor(), u, v);
}

namespace {

// [[e_a, e_b], e_c] accumulated into `out`.
void add_double_bracket(const StructureTensor& t, std::size_t a, std::size_t b, std::size_t c, Vector& out) {
  for (const auto& outer : t.terms(a, b)) {
    for (const auto& inner : t.terms(outer.index, c)) out[inner.index].add_product(outer.coefficient, inner.coefficient);
  }
}

Vector jacobi_triple(const StructureTensor& t, std::size_t i, std::size_t j, std::size_t k) {
  Vector r(t.dim());
  add_double_bracket(t, i, j, k, r);
  add_double_bracket(t, j, k, i, r);
  add_double_bracket(t, k, i, j, r);
  return r;
}

}  // namespace

const JacobiTriple* JacobiResidual::first_failure() const {
  for (const auto& triple : triples) {
    if (!foliate::is_zero(triple.residual)) return &triple;
  }
  return nullptr;
}

JacobiResidual jacobi_residual(const StructureTensor& tensor) {
  JacobiResidual out;
  const std::size_t n = tensor.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        JacobiTriple triple{{i, j, k}, jacobi_triple(tensor, i, j, k)};
        for (const auto& x : triple.residual) {
          auto a = x.abs();
          if (a > out.max_abs) out.max_abs = std::move(a);
        }
        out.triples.push_back(std::move(triple));
      }
    }
  }
  return out;
}

bool satisfies_jacobi(const StructureTensor& tensor) {
  const std::size_t n = tensor.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!is_zero(jacobi_triple(tensor, i, j, k))) return false;
      }
    }
  }
  return true;
}

bool spans_subalgebra(const StructureTensor& tensor, std::span<const std::size_t> indices) {
  std::vector<bool> inside(tensor.dim(), false);
  for (auto i : indices) {
    if (i >= tensor.dim()) throw InputError("index " + std::to_string(i) + " out of range");
    inside[i] = true;
  }
  for (auto a : indices) {
    for (auto b : indices) {
      for (const auto& t : tensor.terms(a, b)) {
        if (!inside[t.index]) return false;
      }
    }
  }
  return true;
}

Matrix killing_form(const StructureTensor& tensor, std::span<const std::size_t> indices) {
  if (!spans_subalgebra(tensor, indices)) {
    throw InputError("Killing form requested on indices that are not closed under the bracket");
  }
  const std::size_t m = indices.size();
  // ad_a restricted to the subalgebra, in the ordered basis `indices`:
  // column q holds the coordinates of [e_a, e_{indices[q]}].
  std::vector<Matrix> ad;
  ad.reserve(m);
  for (auto a : indices) {
    Matrix adm(m, m);
    for (std::size_t q = 0; q < m; ++q) {
      for (std::size_t p = 0; p < m; ++p) adm(p, q) = tensor(a, indices[q], indices[p]);
    }
    ad.push_back(std::move(adm));
  }
  Matrix k(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      Rational trace;
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) trace.add_product(ad[a](p, q), ad[b](q, p));
      }
      k(a, b) = trace;
      k(b, a) = trace;
    }
  }
  return k;
}

bool is_semisimple(const StructureTensor& tensor, std::span<const std::size_t> indices) {
  return !determinant(killing_form(tensor, indices)).is_zero();
}

bool is_compact_type(const StructureTensor& tensor, std::span<const std::size_t> indices) {
  return is_negative_definite(killing_form(tensor, indices));
}

}  // namespace foliate

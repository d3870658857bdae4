#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "foliate/algebra.hpp"

namespace foliate {

/// Levi-Civita connection of a left-invariant metric in an orthonormal frame:
/// nabla_{e_i} e_j = sum_k gamma(i, j, k) e_k.
class ConnectionCoefficients {
 public:
  ConnectionCoefficients(std::size_t dim, std::vector<Rational> gamma);

  std::size_t dim() const noexcept { return dim_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma_[(i * dim_ + j) * dim_ + k];
  }
  /// nabla_{e_i} e_j as a coefficient vector.
  Vector covariant_derivative(std::size_t i, std::size_t j) const;

 private:
  std::size_t dim_;
  std::vector<Rational> gamma_;
};

/// Koszul formula
///   2 g(nabla_{e_i} e_j, e_k) = g([e_k,e_i],e_j) + g([e_k,e_j],e_i) + g(e_k,[e_i,e_j]).
/// Throws InvalidAlgebraError when the table violates the Jacobi identity.
ConnectionCoefficients connection_coefficients(const FoliationSetup& setup);

/// B^V on vertical pairs, keyed by (min index, max index). Values are
/// horizontal vectors of length dim.
using VerticalForm = std::map<std::pair<std::size_t, std::size_t>, Vector>;

/// B^H on the horizontal frame; values are vertical vectors of length dim.
struct HorizontalForm {
  Vector xx;
  Vector xy;
  Vector yy;

  friend bool operator==(const HorizontalForm&, const HorizontalForm&) = default;
};

/// B^V(E, F) = 1/2 H(nabla_E F + nabla_F E), taken from the connection.
VerticalForm second_fundamental_form_vertical(const FoliationSetup& setup, const ConnectionCoefficients& nabla);
VerticalForm second_fundamental_form_vertical(const FoliationSetup& setup);

/// B^H(E, F) = 1/2 V(nabla_E F + nabla_F E), taken from the connection.
HorizontalForm second_fundamental_form_horizontal(const FoliationSetup& setup, const ConnectionCoefficients& nabla);
HorizontalForm second_fundamental_form_horizontal(const FoliationSetup& setup);

/// Closed bracket expressions for the two forms, bypassing the connection:
///   B^V(E,F) = 1/2 sum_H eps_H (g([H,E],F) + g([H,F],E)) H
///   B^H(E,F) = 1/2 sum_V eps_V (g([V,E],F) + g([V,F],E)) V
VerticalForm vertical_form_from_brackets(const FoliationSetup& setup);
HorizontalForm horizontal_form_from_brackets(const FoliationSetup& setup);

struct FoliationReport {
  bool conformal = false;
  bool semi_riemannian = false;
  bool minimal = false;
  bool totally_geodesic = false;

  /// trace B^V = sum_k eps_{V_k} B^V(V_k, V_k); horizontal.
  Vector mean_curvature;
  /// 1/2 (eps_X B^H(X,X) + eps_Y B^H(Y,Y)); vertical. Diagnostic only when
  /// the foliation is not conformal.
  Vector conformal_vector;
  HorizontalForm b_h;
  VerticalForm b_v;
  /// Vertical pairs with B^V != 0, in key order.
  std::vector<std::pair<std::size_t, std::size_t>> geodesic_witnesses;
};

/// Frame criteria: conformal iff eps_X B^H(X,X) - eps_Y B^H(Y,Y) = 0 and
/// B^H(X,Y) = 0; semi-Riemannian iff additionally the conformal vector is zero.
FoliationReport classify(const FoliationSetup& setup);

/// Solves B^H(E,F) = g(E,F) V for V over the three horizontal pairs as an
/// exact linear system. Returns V when a solution exists.
std::optional<Vector> conformal_vector_by_definition(const FoliationSetup& setup);

/// H[[V,V],H] = 0 on basis elements.
bool check_conformal_bracket_condition(const FoliationSetup& setup);

/// For every horizontal H0 and vertical e in block k, [e, H0] has no
/// component in any other block. Blocks must partition the vertical set and
/// each must be an ideal of the vertical subalgebra (InputError otherwise).
bool check_product_condition(const FoliationSetup& setup, const std::vector<std::vector<std::size_t>>& blocks);

}  // namespace foliate

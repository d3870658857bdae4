#include "foliate/geometry.hpp"

#include <sstream>

#include "foliate/error.hpp"

namespace foliate {
namespace {

Rational signed_value(int sign, const Rational& v) { return sign > 0 ? v : -v; }

std::string describe_failure(const FoliationSetup& setup, const JacobiTriple& triple) {
  std::ostringstream msg;
  msg << "Jacobi identity fails on (" << setup.label(triple.indices[0]) << ", " << setup.label(triple.indices[1])
      << ", " << setup.label(triple.indices[2]) << ")";
  return msg.str();
}

}  // namespace

ConnectionCoefficients::ConnectionCoefficients(std::size_t dim, std::vector<Rational> gamma)
    : dim_(dim), gamma_(std::move(gamma)) {
  if (gamma_.size() != dim_ * dim_ * dim_) throw InputError("connection coefficient array has wrong size");
}

Vector ConnectionCoefficients::covariant_derivative(std::size_t i, std::size_t j) const {
  Vector out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) out[k] = (*this)(i, j, k);
  return out;
}

ConnectionCoefficients connection_coefficients(const FoliationSetup& setup) {
  const auto& c = setup.tensor();
  if (!satisfies_jacobi(c)) {
    const auto residual = jacobi_residual(c);
    throw InvalidAlgebraError(describe_failure(setup, *residual.first_failure()));
  }
  const auto& frame = setup.frame();
  const std::size_t n = setup.dim();
  const Rational half(1, 2);
  std::vector<Rational> gamma(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        // 2 g(nabla_i e_j, e_k) = eps_j c(k,i,j) + eps_i c(k,j,i) + eps_k c(i,j,k)
        Rational twice_g = signed_value(frame.epsilon(j), c(k, i, j));
        twice_g += signed_value(frame.epsilon(i), c(k, j, i));
        twice_g += signed_value(frame.epsilon(k), c(i, j, k));
        if (twice_g.is_zero()) continue;
        gamma[(i * n + j) * n + k] = signed_value(frame.epsilon(k), twice_g * half);
      }
    }
  }
  return ConnectionCoefficients(n, std::move(gamma));
}

VerticalForm second_fundamental_form_vertical(const FoliationSetup& setup, const ConnectionCoefficients& nabla) {
  const Rational half(1, 2);
  VerticalForm out;
  const auto& vert = setup.vertical();
  for (std::size_t a = 0; a < vert.size(); ++a) {
    for (std::size_t b = a; b < vert.size(); ++b) {
      const std::size_t i = std::min(vert[a], vert[b]);
      const std::size_t j = std::max(vert[a], vert[b]);
      Vector value(setup.dim());
      for (auto h : setup.horizontal()) value[h] = (nabla(i, j, h) + nabla(j, i, h)) * half;
      out.emplace(std::make_pair(i, j), std::move(value));
    }
  }
  return out;
}

VerticalForm second_fundamental_form_vertical(const FoliationSetup& setup) {
  return second_fundamental_form_vertical(setup, connection_coefficients(setup));
}

HorizontalForm second_fundamental_form_horizontal(const FoliationSetup& setup, const ConnectionCoefficients& nabla) {
  const Rational half(1, 2);
  const auto [x, y] = setup.horizontal();
  auto form = [&](std::size_t e, std::size_t f) {
    Vector value(setup.dim());
    for (auto v : setup.vertical()) value[v] = (nabla(e, f, v) + nabla(f, e, v)) * half;
    return value;
  };
  return HorizontalForm{form(x, x), form(x, y), form(y, y)};
}

HorizontalForm second_fundamental_form_horizontal(const FoliationSetup& setup) {
  return second_fundamental_form_horizontal(setup, connection_coefficients(setup));
}

VerticalForm vertical_form_from_brackets(const FoliationSetup& setup) {
  const auto& c = setup.tensor();
  const auto& frame = setup.frame();
  const Rational half(1, 2);
  VerticalForm out;
  const auto& vert = setup.vertical();
  for (std::size_t a = 0; a < vert.size(); ++a) {
    for (std::size_t b = a; b < vert.size(); ++b) {
      const std::size_t e = std::min(vert[a], vert[b]);
      const std::size_t f = std::max(vert[a], vert[b]);
      Vector value(setup.dim());
      for (auto h : setup.horizontal()) {
        // g([H,E],F) + g([H,F],E)
        Rational s = signed_value(frame.epsilon(f), c(h, e, f)) + signed_value(frame.epsilon(e), c(h, f, e));
        value[h] = signed_value(frame.epsilon(h), s * half);
      }
      out.emplace(std::make_pair(e, f), std::move(value));
    }
  }
  return out;
}

HorizontalForm horizontal_form_from_brackets(const FoliationSetup& setup) {
  const auto& c = setup.tensor();
  const auto& frame = setup.frame();
  const Rational half(1, 2);
  const auto [x, y] = setup.horizontal();
  auto form = [&](std::size_t e, std::size_t f) {
    Vector value(setup.dim());
    for (auto v : setup.vertical()) {
      // g([V,E],F) + g([V,F],E)
      Rational s = signed_value(frame.epsilon(f), c(v, e, f)) + signed_value(frame.epsilon(e), c(v, f, e));
      value[v] = signed_value(frame.epsilon(v), s * half);
    }
    return value;
  };
  return HorizontalForm{form(x, x), form(x, y), form(y, y)};
}

FoliationReport classify(const FoliationSetup& setup) {
  const auto nabla = connection_coefficients(setup);
  const auto& frame = setup.frame();
  const auto [x, y] = setup.horizontal();
  const int eps_x = frame.epsilon(x);
  const int eps_y = frame.epsilon(y);

  FoliationReport report;
  report.b_h = second_fundamental_form_horizontal(setup, nabla);
  report.b_v = second_fundamental_form_vertical(setup, nabla);

  const Vector weighted_xx = eps_x > 0 ? report.b_h.xx : scaled(report.b_h.xx, -1);
  const Vector weighted_yy = eps_y > 0 ? report.b_h.yy : scaled(report.b_h.yy, -1);
  report.conformal = is_zero(weighted_xx - weighted_yy) && is_zero(report.b_h.xy);
  report.conformal_vector = scaled(weighted_xx + weighted_yy, Rational(1, 2));
  report.semi_riemannian = report.conformal && is_zero(report.conformal_vector);

  report.mean_curvature = Vector(setup.dim());
  for (auto v : setup.vertical()) {
    const auto& value = report.b_v.at({v, v});
    axpy(report.mean_curvature, frame.epsilon(v), value);
  }
  report.minimal = is_zero(report.mean_curvature);

  for (const auto& [pair, value] : report.b_v) {
    if (!is_zero(value)) report.geodesic_witnesses.push_back(pair);
  }
  report.totally_geodesic = report.geodesic_witnesses.empty();
  return report;
}

std::optional<Vector> conformal_vector_by_definition(const FoliationSetup& setup) {
  const auto b_h = second_fundamental_form_horizontal(setup);
  const auto& vert = setup.vertical();
  const auto [x, y] = setup.horizontal();
  const std::size_t m = vert.size();
  // Unknowns: the vertical coordinates of V. Equations, per vertical slot:
  //   g(X,X) V = B^H(X,X),  g(X,Y) V = B^H(X,Y) (g(X,Y) = 0),  g(Y,Y) V = B^H(Y,Y).
  Matrix a(3 * m, m);
  Vector rhs(3 * m);
  for (std::size_t p = 0; p < m; ++p) {
    const auto v = vert[p];
    a(3 * p, p) = setup.frame().epsilon(x);
    rhs[3 * p] = b_h.xx[v];
    rhs[3 * p + 1] = b_h.xy[v];
    a(3 * p + 2, p) = setup.frame().epsilon(y);
    rhs[3 * p + 2] = b_h.yy[v];
  }
  const auto solution = solve(a, rhs);
  if (solution.kind == LinearSolution::Kind::kInconsistent) return std::nullopt;
  Vector out(setup.dim());
  for (std::size_t p = 0; p < m; ++p) out[vert[p]] = solution.particular[p];
  return out;
}

bool check_conformal_bracket_condition(const FoliationSetup& setup) {
  const auto& c = setup.tensor();
  const auto& vert = setup.vertical();
  for (auto u : vert) {
    for (auto w : vert) {
      if (u >= w) continue;
      for (auto h : setup.horizontal()) {
        // [[U,W],H] = sum_m c(u,w,m) [e_m, H]
        Vector value(setup.dim());
        for (const auto& t : c.terms(u, w)) {
          for (const auto& s : c.terms(t.index, h)) value[s.index].add_product(t.coefficient, s.coefficient);
        }
        for (auto k : setup.horizontal()) {
          if (!value[k].is_zero()) return false;
        }
      }
    }
  }
  return true;
}

bool check_product_condition(const FoliationSetup& setup, const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t n = setup.dim();
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto i : blocks[b]) {
      if (i >= n || !setup.is_vertical(i)) {
        throw InputError("product block contains non-vertical index " + std::to_string(i));
      }
      if (block_of[i] != -1) throw InputError("index " + std::to_string(i) + " appears in two product blocks");
      block_of[i] = static_cast<int>(b);
    }
  }
  for (auto v : setup.vertical()) {
    if (block_of[v] == -1) throw InputError("vertical index " + std::to_string(v) + " is in no product block");
  }
  const auto& c = setup.tensor();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto i : blocks[b]) {
      for (auto v : setup.vertical()) {
        for (const auto& t : c.terms(i, v)) {
          if (block_of[t.index] != static_cast<int>(b)) {
            throw InputError("product block " + std::to_string(b) + " is not an ideal of the vertical subalgebra");
          }
        }
      }
    }
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto i : blocks[b]) {
      for (auto h : setup.horizontal()) {
        for (const auto& t : c.terms(i, h)) {
          const int target = block_of[t.index];
          if (target != -1 && target != static_cast<int>(b)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace foliate

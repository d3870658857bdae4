#include "foliate/families.hpp"

#include <array>

#include "foliate/error.hpp"

namespace foliate {
namespace {

constexpr std::string_view kSimpleParams[] = {"b11", "b21", "c11", "c12", "c21", "c22", "rho"};
constexpr std::string_view kProductParams[] = {"b11", "b21", "c11", "c12", "c21", "c22", "rho",
                                               "s14", "s24", "t14", "t15", "t24", "t25"};
constexpr std::string_view kSo2Params[] = {"b11", "b21", "c11", "c12", "c21", "c22", "rho",
                                           "x1",  "x2",  "y1",  "y2",  "t14", "t24", "theta4"};

// Basis slots.
constexpr std::size_t kA = 0, kB = 1, kC = 2;
constexpr std::size_t kR = 3, kS = 4, kT8 = 5;  // 8-dim second factor
constexpr std::size_t kT6 = 3;                  // SO(2) generator in 6-dim families

bool second_factor_is_sl2r(FamilyId id) { return id == FamilyId::kSU2xSL2R; }
bool first_factor_is_sl2r(FamilyId id) { return id == FamilyId::kSL2R || id == FamilyId::kSL2RxSO2; }

Rational half(const Rational& v) { return v * Rational(1, 2); }

// Three-dimensional simple factor on slots (a, b, c): [a,b] = 2c, [c,a] = 2b, [b,c] = +-2a.
void add_simple_factor(StructureTensorBuilder& builder, std::size_t a, std::size_t b, std::size_t c, bool sl2r) {
  builder.set(a, b, {{c, 2}});
  builder.set(c, a, {{b, 2}});
  builder.set(b, c, {{a, sl2r ? -2 : 2}});
}

// Rows [a,H], [b,H], [c,H] for one horizontal slot H with coefficients
// (p1, p2, p3) playing the roles (b11, c11, c12) of the first factor.
void add_factor_rows(StructureTensorBuilder& builder, std::size_t a, std::size_t b, std::size_t c, std::size_t h,
                     const Rational& p1, const Rational& p2, const Rational& p3, bool sl2r) {
  const Rational sign = sl2r ? 1 : -1;
  builder.set(a, h, {{b, sign * p1}, {c, sign * p2}});
  builder.set(b, h, {{a, p1}, {c, -p3}});
  builder.set(c, h, {{a, p2}, {b, p3}});
}

struct Params {
  const FamilySpec& spec;
  const Rational& operator[](std::string_view name) const { return spec.param(name); }
};

// Closed-form theta for a simple factor with coefficients in roles
// (b11, b21, c11, c12, c21, c22).
std::array<Rational, 3> factor_theta(const Rational& rho, const Rational& b11, const Rational& b21,
                                     const Rational& c11, const Rational& c12, const Rational& c21,
                                     const Rational& c22, bool sl2r) {
  if (!sl2r) {
    return {half(-rho * c12 + b11 * c21 - b21 * c11), half(rho * c11 + b11 * c22 - b21 * c12),
            half(-rho * b11 + c11 * c22 - c21 * c12)};
  }
  return {half(-rho * c12 - c21 * b11 + c11 * b21), half(-rho * c11 - c22 * b11 + c12 * b21),
          half(rho * b11 - c22 * c11 + c12 * c21)};
}

// Conditions for one simple factor on slots (a, b, c) with coefficients in
// roles (b11, b21, c11, c21, c12, c22) named by `names`.
void factor_conditions(std::vector<Condition>& out, const FamilySpec& spec, std::array<std::size_t, 3> slots,
                       std::array<std::string_view, 3> slot_names, std::array<std::string_view, 6> names,
                       std::array<int, 6> sign) {
  // Pairs: (b, a) for the first two coefficients, (c, a) for the next two, (c, b) for the last two.
  const std::array<std::pair<int, int>, 6> pairs = {{{1, 0}, {1, 0}, {2, 0}, {2, 0}, {2, 1}, {2, 1}}};
  for (std::size_t q = 0; q < 6; ++q) {
    const auto [hi, lo] = pairs[q];
    const int combined = spec.eps(slots[hi]) + sign[q] * spec.eps(slots[lo]);
    std::string label = "(eps_" + std::string(slot_names[hi]) + (sign[q] > 0 ? " + " : " - ") + "eps_" +
                        std::string(slot_names[lo]) + ")*" + std::string(names[q]);
    out.push_back(Condition{std::move(label), spec.param(names[q]) * combined});
  }
}

// Coefficient signs (eps_hi +- eps_lo) per role, for roles (b11, b21, c11, c21, c12, c22).
constexpr std::array<int, 6> kCompactSigns = {-1, -1, -1, -1, -1, -1};
constexpr std::array<int, 6> kSplitSignsDerived = {+1, +1, +1, +1, -1, -1};
constexpr std::array<int, 6> kSplitSignsPrinted = {+1, -1, +1, -1, +1, -1};

}  // namespace

std::string_view family_name(FamilyId id) {
  switch (id) {
    case FamilyId::kSU2: return "su2";
    case FamilyId::kSL2R: return "sl2r";
    case FamilyId::kSU2xSU2: return "su2xsu2";
    case FamilyId::kSU2xSL2R: return "su2xsl2r";
    case FamilyId::kSU2xSO2: return "su2xso2";
    case FamilyId::kSL2RxSO2: return "sl2rxso2";
  }
  return "unknown";
}

std::optional<FamilyId> parse_family(std::string_view name) {
  for (auto id : kAllFamilies) {
    if (family_name(id) == name) return id;
  }
  return std::nullopt;
}

std::size_t family_dimension(FamilyId id) {
  switch (id) {
    case FamilyId::kSU2:
    case FamilyId::kSL2R: return 5;
    case FamilyId::kSU2xSU2:
    case FamilyId::kSU2xSL2R: return 8;
    case FamilyId::kSU2xSO2:
    case FamilyId::kSL2RxSO2: return 6;
  }
  return 0;
}

std::vector<std::string> family_labels(FamilyId id) {
  switch (family_dimension(id)) {
    case 5: return {"A", "B", "C", "X", "Y"};
    case 8: return {"A", "B", "C", "R", "S", "T", "X", "Y"};
    default: return {"A", "B", "C", "T", "X", "Y"};
  }
}

std::vector<std::size_t> family_vertical(FamilyId id) {
  std::vector<std::size_t> v(family_dimension(id) - 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::array<std::size_t, 2> family_horizontal(FamilyId id) {
  const auto n = family_dimension(id);
  return {n - 2, n - 1};
}

std::span<const std::string_view> parameter_names(FamilyId id) {
  switch (family_dimension(id)) {
    case 5: return kSimpleParams;
    case 8: return kProductParams;
    default: return kSo2Params;
  }
}

bool has_semisimple_vertical(FamilyId id) { return !is_so2_family(id); }

bool has_compact_vertical(FamilyId id) {
  return id == FamilyId::kSU2 || id == FamilyId::kSU2xSU2 || id == FamilyId::kSU2xSO2;
}

bool is_so2_family(FamilyId id) { return id == FamilyId::kSU2xSO2 || id == FamilyId::kSL2RxSO2; }

FamilySpec::FamilySpec(FamilyId id, std::map<std::string, Rational> params, MetricFrame signature)
    : id_(id), signature_(std::move(signature)) {
  if (signature_.dim() != family_dimension(id)) {
    throw InputError("family " + std::string(family_name(id)) + " needs a signature of length " +
                     std::to_string(family_dimension(id)) + ", got " + std::to_string(signature_.dim()));
  }
  const auto names = parameter_names(id);
  for (const auto& [name, value] : params) {
    bool known = false;
    for (auto n : names) known = known || n == name;
    if (!known) {
      throw InputError("unknown parameter '" + name + "' for family " + std::string(family_name(id)));
    }
  }
  for (auto n : names) {
    auto it = params.find(std::string(n));
    params_.emplace(std::string(n), it == params.end() ? Rational() : it->second);
  }
}

const Rational& FamilySpec::param(std::string_view name) const {
  auto it = params_.find(std::string(name));
  if (it == params_.end()) {
    throw InputError("family " + std::string(family_name(id_)) + " has no parameter '" + std::string(name) + "'");
  }
  return it->second;
}

FamilySpec FamilySpec::with_signature(MetricFrame signature) const {
  return FamilySpec(id_, params_, std::move(signature));
}

FamilySpec FamilySpec::with_param(std::string_view name, Rational value) const {
  auto params = params_;
  params[std::string(name)] = std::move(value);
  return FamilySpec(id_, std::move(params), signature_);
}

ThetaVector closed_form_theta(const FamilySpec& spec) {
  const Params p{spec};
  const auto id = spec.id();
  const auto first = factor_theta(p["rho"], p["b11"], p["b21"], p["c11"], p["c12"], p["c21"], p["c22"],
                                  first_factor_is_sl2r(id));
  ThetaVector theta(first.begin(), first.end());
  if (family_dimension(id) == 8) {
    const auto second = factor_theta(p["rho"], p["s14"], p["s24"], p["t14"], p["t15"], p["t24"], p["t25"],
                                     second_factor_is_sl2r(id));
    theta.insert(theta.end(), second.begin(), second.end());
  } else if (is_so2_family(id)) {
    theta.push_back(p["theta4"]);
  }
  return theta;
}

StructureTensor family_table(const FamilySpec& spec, const ThetaVector& theta, TableVariant variant) {
  const auto id = spec.id();
  const std::size_t n = family_dimension(id);
  const auto [x, y] = family_horizontal(id);
  const Params p{spec};
  if (theta.size() != n - 2) {
    throw InputError("theta for family " + std::string(family_name(id)) + " needs " + std::to_string(n - 2) +
                     " entries");
  }

  StructureTensorBuilder builder(n);
  const bool sl2r = first_factor_is_sl2r(id);
  add_simple_factor(builder, kA, kB, kC, sl2r);
  add_factor_rows(builder, kA, kB, kC, x, p["b11"], p["c11"], p["c12"], sl2r);
  add_factor_rows(builder, kA, kB, kC, y, p["b21"], p["c21"], p["c22"], sl2r);

  if (n == 8) {
    const bool second_sl2r = second_factor_is_sl2r(id);
    add_simple_factor(builder, kR, kS, kT8, second_sl2r);
    add_factor_rows(builder, kR, kS, kT8, x, p["s14"], p["t14"], p["t15"], second_sl2r);
    add_factor_rows(builder, kR, kS, kT8, y, p["s24"], p["t24"], p["t25"], second_sl2r);
  }

  if (is_so2_family(id)) {
    // [T,H] = u X + v Y - 1/2 (sA (u c12 + v c22) A + sB (u c11 + v c21) B + sC (u b11 + v b21) C) + t T
    auto so2_row = [&](std::size_t h, const Rational& u, const Rational& v, const Rational& t, std::array<int, 3> s) {
      Vector row(n);
      row[x] = u;
      row[y] = v;
      row[kA] = half(-(u * p["c12"] + v * p["c22"])) * s[0];
      row[kB] = half(-(u * p["c11"] + v * p["c21"])) * s[1];
      row[kC] = half(-(u * p["b11"] + v * p["b21"])) * s[2];
      row[kT6] = t;
      builder.set(kT6, h, row);
    };
    const std::array<int, 3> compact = {1, -1, 1};
    const std::array<int, 3> split = {1, 1, -1};
    const auto tx = sl2r ? split : compact;
    const auto ty = sl2r ? (variant == TableVariant::kAsPrinted ? compact : split) : compact;
    so2_row(x, p["x1"], p["y1"], p["t14"], tx);
    so2_row(y, p["x2"], p["y2"], p["t24"], ty);
  }

  Vector xy(n);
  xy[x] = p["rho"];
  for (std::size_t k = 0; k < theta.size(); ++k) xy[k] = theta[k];
  builder.set(x, y, xy);
  return builder.build();
}

FoliationSetup build_family(const FamilySpec& spec, const BuildOptions& options) {
  const auto id = spec.id();
  if (is_so2_family(id)) {
    if (options.enforce_conformality) {
      const auto violated = so2_conformality_violations(spec);
      if (!violated.empty()) {
        throw ConstraintError(violated.front(), "conformality relation violated: " + violated.front());
      }
    }
    const auto violated = so2_jacobi_violations(spec);
    if (!violated.empty()) {
      throw ConstraintError(violated.front(), "Jacobi compatibility relation violated: " + violated.front());
    }
  }
  return FoliationSetup(family_table(spec, closed_form_theta(spec), options.variant), spec.signature(),
                        family_vertical(id), family_horizontal(id), family_labels(id));
}

bool closed_form_minimal(const FamilySpec& spec) {
  if (!is_so2_family(spec.id())) return true;
  return spec.param("t14").is_zero() && spec.param("t24").is_zero();
}

std::vector<Condition> totally_geodesic_conditions(const FamilySpec& spec, ConditionSet set) {
  const auto id = spec.id();
  std::vector<Condition> out;
  if (is_so2_family(id)) {
    out.push_back({"t14", spec.param("t14")});
    out.push_back({"t24", spec.param("t24")});
  }
  const auto split_signs = set == ConditionSet::kAsPrinted ? kSplitSignsPrinted : kSplitSignsDerived;
  // The SO(2) product with SL2R was published with the derived signs.
  const auto first_signs = !first_factor_is_sl2r(id)         ? kCompactSigns
                           : id == FamilyId::kSL2RxSO2 ? kSplitSignsDerived
                                                             : split_signs;
  factor_conditions(out, spec, {kA, kB, kC}, {"A", "B", "C"}, {"b11", "b21", "c11", "c21", "c12", "c22"},
                    first_signs);
  if (family_dimension(id) == 8) {
    factor_conditions(out, spec, {kR, kS, kT8}, {"R", "S", "T"}, {"s14", "s24", "t14", "t24", "t15", "t25"},
                      second_factor_is_sl2r(id) ? split_signs : kCompactSigns);
  }
  if (is_so2_family(id)) {
    const Params p{spec};
    const std::array<std::pair<const char*, const char*>, 3> coeffs = {
        {{"c12", "c22"}, {"c11", "c21"}, {"b11", "b21"}}};
    for (const auto& [first, second] : coeffs) {
      for (const auto& [u, v] : {std::pair{"x1", "y1"}, std::pair{"x2", "y2"}}) {
        out.push_back({std::string(u) + "*" + first + " + " + v + "*" + second, p[u] * p[first] + p[v] * p[second]});
      }
    }
  }
  return out;
}

bool closed_form_totally_geodesic(const FamilySpec& spec, ConditionSet set) {
  for (const auto& c : totally_geodesic_conditions(spec, set)) {
    if (!c.holds()) return false;
  }
  return true;
}

bool so2_conformality_constraint(const MetricFrame& signature, const Rational& x1, const Rational& y1,
                                 const Rational& x2, const Rational& y2) {
  if (signature.dim() < 6) throw InputError("SO(2) conformality test needs a 6-dim signature");
  const Rational weighted = x2 * signature.epsilon(4) + y1 * signature.epsilon(5);
  return x1 == y2 && weighted.is_zero();
}

std::vector<std::string> so2_conformality_violations(const FamilySpec& spec) {
  std::vector<std::string> out;
  if (!is_so2_family(spec.id())) return out;
  const Params p{spec};
  if (p["x1"] != p["y2"]) out.emplace_back("x1 = y2");
  if (!(p["x2"] * spec.eps(4) + p["y1"] * spec.eps(5)).is_zero()) out.emplace_back("eps_X*x2 + eps_Y*y1 = 0");
  return out;
}

std::vector<std::string> so2_jacobi_violations(const FamilySpec& spec) {
  std::vector<std::string> out;
  if (!is_so2_family(spec.id())) return out;
  const Params p{spec};
  const auto &rho = p["rho"], &x1 = p["x1"], &x2 = p["x2"], &y1 = p["y1"], &y2 = p["y2"];
  const auto &t14 = p["t14"], &t24 = p["t24"], &theta4 = p["theta4"];
  if (!(rho * y2 + t14 * x2 - t24 * x1).is_zero()) out.emplace_back("rho*y2 + t14*x2 - t24*x1 = 0");
  if (!(t14 * y2 - (rho + t24) * y1).is_zero()) out.emplace_back("t14*y2 - (rho + t24)*y1 = 0");
  if (!(theta4 * (x1 + y2) - rho * t14).is_zero()) out.emplace_back("theta4*(x1 + y2) - rho*t14 = 0");
  return out;
}

}  // namespace foliate

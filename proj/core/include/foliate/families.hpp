#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foliate/algebra.hpp"

namespace foliate {

/// The six classified subalgebra families. Basis order is fixed:
///   5-dim  A B C X Y
///   8-dim  A B C R S T X Y
///   6-dim  A B C T X Y
enum class FamilyId { kSU2, kSL2R, kSU2xSU2, kSU2xSL2R, kSU2xSO2, kSL2RxSO2 };

inline constexpr FamilyId kAllFamilies[] = {FamilyId::kSU2,      FamilyId::kSL2R,     FamilyId::kSU2xSU2,
                                            FamilyId::kSU2xSL2R, FamilyId::kSU2xSO2, FamilyId::kSL2RxSO2};

std::string_view family_name(FamilyId id);           // "su2", "sl2r", "su2xsu2", ...
std::optional<FamilyId> parse_family(std::string_view name);

std::size_t family_dimension(FamilyId id);
std::vector<std::string> family_labels(FamilyId id);
std::vector<std::size_t> family_vertical(FamilyId id);
std::array<std::size_t, 2> family_horizontal(FamilyId id);

/// Free coefficients of the family's bracket table, in table order.
std::span<const std::string_view> parameter_names(FamilyId id);

bool has_semisimple_vertical(FamilyId id);  // everything except the SO(2) products
bool has_compact_vertical(FamilyId id);     // SU2, SU2xSU2, SU2xSO2
bool is_so2_family(FamilyId id);

/// A family together with values for all of its free coefficients and a
/// signature for the full algebra. Unlisted coefficients default to zero;
/// unknown names are rejected.
class FamilySpec {
 public:
  FamilySpec(FamilyId id, std::map<std::string, Rational> params, MetricFrame signature);

  FamilyId id() const noexcept { return id_; }
  const MetricFrame& signature() const noexcept { return signature_; }
  const std::map<std::string, Rational>& params() const noexcept { return params_; }
  const Rational& param(std::string_view name) const;
  int eps(std::size_t index) const { return signature_.epsilon(index); }

  FamilySpec with_signature(MetricFrame signature) const;
  FamilySpec with_param(std::string_view name, Rational value) const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

 private:
  FamilyId id_;
  std::map<std::string, Rational> params_;
  MetricFrame signature_;
};

/// The [X,Y] coefficients along the vertical basis: 3 entries for 5-dim
/// families, 6 for 8-dim, 4 for SO(2) products (the last is along T).
using ThetaVector = Vector;

/// Sign pattern for the SL2R x SO2 rows [T,X] and [T,Y]. The printed table
/// uses different patterns in the two rows and fails the Jacobi identity;
/// `kConsistent` uses the [T,X] pattern in both. Ignored for other families.
enum class TableVariant { kConsistent, kAsPrinted };

/// Which totally-geodesic condition list to evaluate. `kAsPrinted` keeps the
/// published coefficient signs for SL2R and the SL2R factor of SU2xSL2R,
/// which disagree with the second fundamental form; `kDerived` is the list
/// recomputed from B^V. Identical for the other families.
enum class ConditionSet { kDerived, kAsPrinted };

ThetaVector closed_form_theta(const FamilySpec& spec);

/// The family's bracket table with an explicit theta (length per ThetaVector).
/// Performs no constraint checks.
StructureTensor family_table(const FamilySpec& spec, const ThetaVector& theta,
                             TableVariant variant = TableVariant::kConsistent);

struct BuildOptions {
  TableVariant variant = TableVariant::kConsistent;
  /// SO(2) products: reject parameters violating x1 = y2 and
  /// eps_X x2 + eps_Y y1 = 0. Disable to build raw (possibly non-conformal) tables.
  bool enforce_conformality = true;
};

/// Builds the family's foliation setup. For SO(2) products throws
/// ConstraintError when the conformality relations (if enforced) or the
/// Jacobi compatibility relations are violated.
FoliationSetup build_family(const FamilySpec& spec, const BuildOptions& options = {});

bool closed_form_minimal(const FamilySpec& spec);

/// One scalar condition "expression = 0" of a closed-form predicate.
struct Condition {
  std::string label;
  Rational value;

  bool holds() const { return value.is_zero(); }
};

/// Conditions whose simultaneous vanishing is equivalent to total geodesy.
/// For SO(2) products the list starts with t14 and t24 (minimality).
std::vector<Condition> totally_geodesic_conditions(const FamilySpec& spec, ConditionSet set = ConditionSet::kDerived);
bool closed_form_totally_geodesic(const FamilySpec& spec, ConditionSet set = ConditionSet::kDerived);

/// x1 = y2 and eps_X x2 + eps_Y y1 = 0, with eps taken from `signature`
/// at the family's X and Y slots (indices 4 and 5).
bool so2_conformality_constraint(const MetricFrame& signature, const Rational& x1, const Rational& y1,
                                 const Rational& x2, const Rational& y2);

/// Violated SO(2) conformality relations, by name; empty when satisfied.
std::vector<std::string> so2_conformality_violations(const FamilySpec& spec);

/// Relations forced on (rho, t14, t24, theta4) by the Jacobi identity on
/// (T, X, Y) in the SO(2) products:
///   rho y2 + t14 x2 - t24 x1 = 0
///   t14 y2 - (rho + t24) y1 = 0
///   theta4 (x1 + y2) - rho t14 = 0
/// Returns the violated ones, by name; empty for other families.
std::vector<std::string> so2_jacobi_violations(const FamilySpec& spec);

}  // namespace foliate

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "foliate/families.hpp"
#include "foliate/geometry.hpp"

namespace foliate {

// ---------------------------------------------------------------------------
// Theta oracle

/// Result of solving the Jacobi identity for the [X,Y] coefficients.
struct ThetaSolution {
  enum class Status { kUnique, kUnderdetermined, kInfeasible };

  Status status = Status::kInfeasible;
  ThetaVector theta;                  // a particular solution unless infeasible
  std::vector<ThetaVector> directions;  // basis of the homogeneous solutions

  std::size_t dimension() const noexcept { return directions.size(); }
};

/// Treats the theta entries of the family's table as unknowns, assembles the
/// Jacobi residual r(theta) = r0 + M theta over every basis triple and solves
/// M theta = -r0 exactly. The signature of `spec` plays no role.
ThetaSolution oracle_solve_theta(const FamilySpec& spec, TableVariant variant = TableVariant::kConsistent);

// ---------------------------------------------------------------------------
// Sampling

/// Per-sample random stream: sample `index` of a run seeded with `seed`
/// always sees the same sequence, independent of evaluation order.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [lo, hi] (inclusive), portable across standard libraries.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// p / q with p uniform in [-range, range], q uniform in [1, range]; zero
/// with probability 1/4 on top of that so degenerate strata are hit.
Rational random_rational(std::mt19937_64& rng, std::int64_t range);

struct SamplingOptions {
  std::int64_t range = 6;
  std::map<std::string, Rational> pinned;  // applied after drawing
  /// SO(2) products: draw x1, x2, y1, y2 independently instead of on the
  /// conformal locus.
  bool raw_so2 = false;
};

/// Draws a valid spec for `family` in `signature`. SO(2) products are drawn on
/// the Jacobi-compatible locus (and the conformal locus unless `raw_so2`);
/// rejected draws are counted in `rejected`. Throws InputError if 10000
/// consecutive draws are rejected (e.g. infeasible pins).
FamilySpec draw_spec(FamilyId family, const MetricFrame& signature, std::mt19937_64& rng,
                     const SamplingOptions& options, std::size_t* rejected = nullptr);

// ---------------------------------------------------------------------------
// Sweeps

enum class SignatureMode { kAll, kRiemannianOnly, kFixed };

std::string_view signature_mode_name(SignatureMode mode);
std::optional<SignatureMode> parse_signature_mode(std::string_view name);

struct SweepConfig {
  FamilyId family = FamilyId::kSU2;
  std::size_t samples = 100;  // parameter draws
  std::uint64_t seed = 0;
  std::int64_t range = 6;
  SignatureMode signatures = SignatureMode::kAll;
  std::vector<MetricFrame> fixed_signatures;  // kFixed only
  std::map<std::string, Rational> pinned;
  /// Also compare every case against the independent routes (theta oracle,
  /// bracket-formula forms, definition-level conformality).
  bool cross_check = false;
  /// Cap on listed counterexamples; counts are always complete.
  std::size_t max_listed = 100;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws InputError when samples == 0, range <= 0 or fixed signatures are
  /// missing / of the wrong dimension.
  void validate() const;
  std::vector<MetricFrame> signature_list() const;
};

struct CaseRecord {
  std::size_t draw = 0;
  FamilySpec spec;
  bool conformal = false;
  bool semi_riemannian = false;
  bool minimal = false;
  bool totally_geodesic = false;
  bool expected_semi_riemannian = false;
  bool expected_minimal = false;
  bool expected_totally_geodesic = false;
  std::vector<std::string> notes;  // disagreement reasons, violated conditions
};

struct SweepReport {
  SweepConfig config;
  std::size_t total_cases = 0;
  std::size_t agreements = 0;
  std::size_t rejected_draws = 0;
  std::vector<CaseRecord> disagreements;  // complete

  std::size_t conformal_count = 0;
  std::size_t semi_riemannian_count = 0;
  std::size_t minimal_count = 0;
  std::size_t totally_geodesic_count = 0;
  std::size_t oracle_checks = 0;

  /// Semisimple (compact-type where the family is compact) vertical,
  /// conformal, not totally geodesic.
  std::size_t conjecture_counterexample_count = 0;
  std::vector<CaseRecord> conjecture_counterexamples;  // first max_listed
  /// Semisimple vertical, conformal, not minimal. Expected empty.
  std::size_t minimality_counterexample_count = 0;
  std::vector<CaseRecord> minimality_counterexamples;  // first max_listed
};

/// Evaluates every (draw, signature) case through classify() and through the
/// closed-form predicates. Deterministic in the config; parallel evaluation
/// does not affect the result.
SweepReport run_sweep(const SweepConfig& config);

// ---------------------------------------------------------------------------
// Counterexamples to "semisimple compact K => totally geodesic"

struct Counterexample {
  FamilySpec spec;
  bool compact_type = false;
  std::vector<Condition> violated;  // closed-form conditions that fail
  std::pair<std::size_t, std::size_t> witness{};  // a vertical pair with B^V != 0
  Vector witness_value;
};

/// Samples as run_sweep does and returns up to `config.max_listed` specs whose
/// vertical subalgebra is semisimple (and of compact type for the compact
/// families) with a conformal but not totally geodesic foliation. Each is
/// re-verified through classify(). Throws InputError for SO(2) products.
std::vector<Counterexample> find_conjecture_counterexamples(const SweepConfig& config);

}  // namespace foliate

#include "foliate/verifier.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "foliate/error.hpp"
#include "foliate/matrix.hpp"

namespace foliate {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector flatten_residual(const JacobiResidual& r) {
  Vector out;
  for (const auto& triple : r.triples) out.insert(out.end(), triple.residual.begin(), triple.residual.end());
  return out;
}

Vector flat_jacobi(const FamilySpec& spec, const ThetaVector& theta, TableVariant variant) {
  return flatten_residual(jacobi_residual(family_table(spec, theta, variant)));
}

}  // namespace

ThetaSolution oracle_solve_theta(const FamilySpec& spec, TableVariant variant) {
  const std::size_t unknowns = family_dimension(spec.id()) - 2;
  const ThetaVector origin(unknowns);
  const Vector r0 = flat_jacobi(spec, origin, variant);

  Matrix m(r0.size(), unknowns);
  for (std::size_t col = 0; col < unknowns; ++col) {
    const Vector rc = flat_jacobi(spec, unit_vector(unknowns, col), variant);
    for (std::size_t row = 0; row < r0.size(); ++row) m(row, col) = rc[row] - r0[row];
  }
  Vector rhs(r0.size());
  for (std::size_t row = 0; row < r0.size(); ++row) rhs[row] = -r0[row];

  const auto linear = solve(m, rhs);
  ThetaSolution out;
  if (linear.kind == LinearSolution::Kind::kInconsistent) {
    out.status = ThetaSolution::Status::kInfeasible;
    return out;
  }
  out.theta = linear.particular;
  out.directions = linear.directions;
  out.status = linear.directions.empty() ? ThetaSolution::Status::kUnique : ThetaSolution::Status::kUnderdetermined;

  // The residual is affine in theta; confirm on the returned solution set.
  if (!is_zero(flat_jacobi(spec, out.theta, variant))) {
    throw InvalidAlgebraError("Jacobi residual is not affine in theta for family " +
                              std::string(family_name(spec.id())));
  }
  for (const auto& d : out.directions) {
    if (!is_zero(flat_jacobi(spec, out.theta + d, variant))) {
      throw InvalidAlgebraError("Jacobi residual is not affine in theta for family " +
                                std::string(family_name(spec.id())));
    }
  }
  return out;
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % span);
}

Rational random_rational(std::mt19937_64& rng, std::int64_t range) {
  if (range <= 0) throw InputError("parameter range must be positive");
  if (uniform_int(rng, 0, 3) == 0) return Rational();
  const auto p = uniform_int(rng, -range, range);
  const auto q = uniform_int(rng, 1, range);
  return Rational(p, q);
}

namespace {

bool satisfies_family_relations(const FamilySpec& spec, bool enforce_conformality) {
  if (!is_so2_family(spec.id())) return true;
  if (enforce_conformality && !so2_conformality_violations(spec).empty()) return false;
  return so2_jacobi_violations(spec).empty();
}

// One attempt at an SO(2)-product draw; nullopt when the theta4 relation
// cannot be met.
std::optional<std::map<std::string, Rational>> draw_so2_params(const MetricFrame& signature, std::mt19937_64& rng,
                                                               const SamplingOptions& options) {
  std::map<std::string, Rational> p;
  for (auto name : {"b11", "b21", "c11", "c12", "c21", "c22"}) p[name] = random_rational(rng, options.range);

  Rational x1, x2, y1, y2;
  if (options.raw_so2) {
    x1 = random_rational(rng, options.range);
    x2 = random_rational(rng, options.range);
    y1 = random_rational(rng, options.range);
    y2 = random_rational(rng, options.range);
  } else {
    x1 = random_rational(rng, options.range);
    y2 = x1;
    x2 = random_rational(rng, options.range);
    // eps_X x2 + eps_Y y1 = 0
    y1 = -(x2 * (signature.epsilon(4) * signature.epsilon(5)));
  }

  // (rho, t14, t24) on the null space of the (T,X,Y) Jacobi relations.
  Matrix relations(2, 3);
  relations(0, 0) = y2;
  relations(0, 1) = x2;
  relations(0, 2) = -x1;
  relations(1, 0) = -y1;
  relations(1, 1) = y2;
  relations(1, 2) = -y1;
  Vector rho_t(3);
  for (const auto& direction : null_space(relations)) axpy(rho_t, random_rational(rng, options.range), direction);

  const Rational trace = x1 + y2;
  Rational theta4;
  if (!trace.is_zero()) {
    theta4 = rho_t[0] * rho_t[1] / trace;
  } else if (!(rho_t[0] * rho_t[1]).is_zero()) {
    return std::nullopt;
  } else {
    theta4 = random_rational(rng, options.range);
  }

  p["x1"] = x1;
  p["x2"] = x2;
  p["y1"] = y1;
  p["y2"] = y2;
  p["rho"] = rho_t[0];
  p["t14"] = rho_t[1];
  p["t24"] = rho_t[2];
  p["theta4"] = theta4;
  return p;
}

}  // namespace

FamilySpec draw_spec(FamilyId family, const MetricFrame& signature, std::mt19937_64& rng,
                     const SamplingOptions& options, std::size_t* rejected) {
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::map<std::string, Rational> params;
    if (is_so2_family(family)) {
      auto drawn = draw_so2_params(signature, rng, options);
      if (!drawn) {
        if (rejected) ++*rejected;
        continue;
      }
      params = std::move(*drawn);
    } else {
      for (auto name : parameter_names(family)) params[std::string(name)] = random_rational(rng, options.range);
    }
    for (const auto& [name, value] : options.pinned) params[name] = value;
    FamilySpec spec(family, std::move(params), signature);
    if (!satisfies_family_relations(spec, !options.raw_so2)) {
      if (rejected) ++*rejected;
      continue;
    }
    return spec;
  }
  throw InputError("could not draw a valid " + std::string(family_name(family)) + " specification in " +
                   std::to_string(kMaxAttempts) + " attempts; check pinned parameters");
}

std::string_view signature_mode_name(SignatureMode mode) {
  switch (mode) {
    case SignatureMode::kAll: return "all";
    case SignatureMode::kRiemannianOnly: return "riemannian-only";
    case SignatureMode::kFixed: return "fixed";
  }
  return "unknown";
}

std::optional<SignatureMode> parse_signature_mode(std::string_view name) {
  for (auto mode : {SignatureMode::kAll, SignatureMode::kRiemannianOnly, SignatureMode::kFixed}) {
    if (signature_mode_name(mode) == name) return mode;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (samples == 0) throw InputError("sweep needs at least one sample");
  if (range <= 0) throw InputError("parameter range must be positive");
  if (signatures == SignatureMode::kFixed) {
    if (fixed_signatures.empty()) throw InputError("fixed signature mode needs at least one signature");
    for (const auto& s : fixed_signatures) {
      if (s.dim() != family_dimension(family)) {
        throw InputError("fixed signature has length " + std::to_string(s.dim()) + ", family " +
                         std::string(family_name(family)) + " needs " + std::to_string(family_dimension(family)));
      }
    }
  }
  FamilySpec(family, pinned, MetricFrame::riemannian(family_dimension(family)));  // rejects unknown names
}

std::vector<MetricFrame> SweepConfig::signature_list() const {
  const std::size_t n = family_dimension(family);
  switch (signatures) {
    case SignatureMode::kAll: {
      std::vector<MetricFrame> out;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) out.push_back(MetricFrame::from_mask(n, mask));
      return out;
    }
    case SignatureMode::kRiemannianOnly: return {MetricFrame::riemannian(n)};
    case SignatureMode::kFixed: return fixed_signatures;
  }
  return {};
}

namespace {

struct SemisimplicityCache {
  std::optional<StructureTensor> vertical_table;
  bool semisimple = false;
  bool compact = false;

  void update(const FoliationSetup& setup) {
    // Only the vertical brackets matter; compare them directly.
    const auto& t = setup.tensor();
    bool same = vertical_table.has_value();
    if (same) {
      for (auto i : setup.vertical()) {
        for (auto j : setup.vertical()) {
          for (auto k : setup.vertical()) {
            if ((*vertical_table)(i, j, k) != t(i, j, k)) same = false;
          }
        }
      }
    }
    if (same) return;
    vertical_table = t;
    semisimple = is_semisimple(t, setup.vertical());
    compact = semisimple && is_compact_type(t, setup.vertical());
  }
};

struct DrawResult {
  std::size_t total = 0;
  std::size_t agreements = 0;
  std::size_t rejected = 0;
  std::vector<CaseRecord> disagreements;
  std::size_t conformal = 0, semi = 0, minimal = 0, geodesic = 0, oracle_checks = 0;
  std::size_t conjecture_count = 0, minimality_count = 0;
  std::vector<CaseRecord> conjecture;
  std::vector<CaseRecord> minimality;
};

std::string pair_label(const FoliationSetup& setup, std::pair<std::size_t, std::size_t> p) {
  return "B^V(" + setup.label(p.first) + "," + setup.label(p.second) + ")";
}

void check_theta_oracle(const FamilySpec& spec, std::vector<std::string>& notes) {
  const auto solution = oracle_solve_theta(spec);
  const auto closed = closed_form_theta(spec);
  switch (solution.status) {
    case ThetaSolution::Status::kInfeasible:
      notes.emplace_back("theta oracle: Jacobi system infeasible");
      break;
    case ThetaSolution::Status::kUnique:
      if (solution.theta != closed) notes.emplace_back("theta oracle: closed form differs from the unique solution");
      break;
    case ThetaSolution::Status::kUnderdetermined: {
      // Only the SO(2) direction may be free, and the closed form must lie in the set.
      const bool so2_direction = is_so2_family(spec.id()) && solution.directions.size() == 1 &&
                                 std::all_of(solution.directions[0].begin(), solution.directions[0].end() - 1,
                                             [](const Rational& v) { return v.is_zero(); });
      if (!so2_direction) notes.emplace_back("theta oracle: unexpected free directions");
      const Vector diff = closed - solution.theta;
      if (!so2_direction || !diff[0].is_zero() || !diff[1].is_zero() || !diff[2].is_zero()) {
        notes.emplace_back("theta oracle: closed form outside the solution set");
      }
      break;
    }
  }
}

void cross_check(const FoliationSetup& setup, const FoliationReport& report, std::vector<std::string>& notes) {
  if (vertical_form_from_brackets(setup) != report.b_v) notes.emplace_back("B^V: connection and bracket formula differ");
  if (!(horizontal_form_from_brackets(setup) == report.b_h)) {
    notes.emplace_back("B^H: connection and bracket formula differ");
  }
  const auto by_definition = conformal_vector_by_definition(setup);
  if (by_definition.has_value() != report.conformal) {
    notes.emplace_back("conformality: frame criteria and definition disagree");
  } else if (by_definition && *by_definition != report.conformal_vector) {
    notes.emplace_back("conformality: conformal vectors differ");
  }
  if (report.conformal && !check_conformal_bracket_condition(setup)) {
    notes.emplace_back("conformal foliation violates H[[V,V],H] = 0");
  }
  if (setup.dim() == 8 && !check_product_condition(setup, {{0, 1, 2}, {3, 4, 5}})) {
    notes.emplace_back("product condition V_j[V_k,H] = 0 fails");
  }
}

DrawResult evaluate_draw(const SweepConfig& config, const std::vector<MetricFrame>& signatures, std::size_t draw) {
  DrawResult out;
  auto rng = sample_stream(config.seed, draw);
  SamplingOptions sampling{config.range, config.pinned, false};
  SemisimplicityCache semisimplicity;
  const bool semisimple_family = has_semisimple_vertical(config.family);

  std::optional<FamilySpec> shared;
  if (!is_so2_family(config.family)) {
    shared = draw_spec(config.family, signatures.front(), rng, sampling, &out.rejected);
  }

  for (std::size_t s = 0; s < signatures.size(); ++s) {
    FamilySpec spec = shared ? shared->with_signature(signatures[s])
                             : draw_spec(config.family, signatures[s], rng, sampling, &out.rejected);
    CaseRecord record{.draw = draw, .spec = spec, .notes = {}};
    record.expected_minimal = closed_form_minimal(spec);
    record.expected_totally_geodesic = closed_form_totally_geodesic(spec);
    record.expected_semi_riemannian =
        semisimple_family || (spec.param("x1").is_zero() && spec.param("y2").is_zero());
    ++out.total;

    try {
      const FoliationSetup setup = build_family(spec);
      const FoliationReport report = classify(setup);
      record.conformal = report.conformal;
      record.semi_riemannian = report.semi_riemannian;
      record.minimal = report.minimal;
      record.totally_geodesic = report.totally_geodesic;

      if (!report.conformal) record.notes.emplace_back("classify: not conformal");
      if (report.semi_riemannian != record.expected_semi_riemannian) {
        record.notes.emplace_back("semi-Riemannian flag differs from closed form");
      }
      if (report.minimal != record.expected_minimal) record.notes.emplace_back("minimal flag differs from closed form");
      if (report.totally_geodesic != record.expected_totally_geodesic) {
        record.notes.emplace_back("totally geodesic flag differs from closed form");
      }
      if (config.cross_check) {
        cross_check(setup, report, record.notes);
        if (!shared || s == 0) {
          check_theta_oracle(spec, record.notes);
          ++out.oracle_checks;
        }
      }

      out.conformal += report.conformal;
      out.semi += report.semi_riemannian;
      out.minimal += report.minimal;
      out.geodesic += report.totally_geodesic;

      semisimplicity.update(setup);
      if (semisimplicity.semisimple && report.conformal) {
        const bool compact_premise = !has_compact_vertical(config.family) || semisimplicity.compact;
        auto annotated = [&] {
          CaseRecord r = record;
          r.notes.clear();
          for (const auto& c : totally_geodesic_conditions(spec)) {
            if (!c.holds()) r.notes.push_back(c.label + " = " + c.value.to_string());
          }
          for (const auto& w : report.geodesic_witnesses) r.notes.push_back(pair_label(setup, w) + " != 0");
          return r;
        };
        if (compact_premise && !report.totally_geodesic) {
          ++out.conjecture_count;
          if (out.conjecture.size() < config.max_listed) out.conjecture.push_back(annotated());
        }
        if (!report.minimal) {
          ++out.minimality_count;
          if (out.minimality.size() < config.max_listed) out.minimality.push_back(annotated());
        }
      }
    } catch (const std::exception& e) {
      record.notes.emplace_back(std::string("evaluation failed: ") + e.what());
    }

    if (record.notes.empty()) {
      ++out.agreements;
    } else {
      out.disagreements.push_back(std::move(record));
    }
  }
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
  config.validate();
  const auto signatures = config.signature_list();

  std::vector<DrawResult> results(config.samples);
  unsigned threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.samples));
  if (threads <= 1) {
    for (std::size_t d = 0; d < config.samples; ++d) results[d] = evaluate_draw(config, signatures, d);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t d = t; d < config.samples; d += threads) results[d] = evaluate_draw(config, signatures, d);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SweepReport report;
  report.config = config;
  for (auto& r : results) {
    report.total_cases += r.total;
    report.agreements += r.agreements;
    report.rejected_draws += r.rejected;
    report.conformal_count += r.conformal;
    report.semi_riemannian_count += r.semi;
    report.minimal_count += r.minimal;
    report.totally_geodesic_count += r.geodesic;
    report.oracle_checks += r.oracle_checks;
    report.conjecture_counterexample_count += r.conjecture_count;
    report.minimality_counterexample_count += r.minimality_count;
    for (auto& c : r.disagreements) report.disagreements.push_back(std::move(c));
    for (auto& c : r.conjecture) {
      if (report.conjecture_counterexamples.size() < config.max_listed) report.conjecture_counterexamples.push_back(std::move(c));
    }
    for (auto& c : r.minimality) {
      if (report.minimality_counterexamples.size() < config.max_listed) report.minimality_counterexamples.push_back(std::move(c));
    }
  }
  return report;
}

std::vector<Counterexample> find_conjecture_counterexamples(const SweepConfig& config) {
  if (!has_semisimple_vertical(config.family)) {
    throw InputError("family " + std::string(family_name(config.family)) +
                     " has a non-semisimple vertical subalgebra; the conjecture assumes K semisimple");
  }
  config.validate();
  const auto signatures = config.signature_list();
  const auto vertical = family_vertical(config.family);
  SamplingOptions sampling{config.range, config.pinned, false};

  std::vector<Counterexample> out;
  for (std::size_t draw = 0; draw < config.samples && out.size() < config.max_listed; ++draw) {
    auto rng = sample_stream(config.seed, draw);
    const FamilySpec base = draw_spec(config.family, signatures.front(), rng, sampling);
    for (const auto& signature : signatures) {
      if (out.size() >= config.max_listed) break;
      const FamilySpec spec = base.with_signature(signature);
      const FoliationSetup setup = build_family(spec);
      const auto report = classify(setup);
      if (!report.conformal || report.totally_geodesic) continue;
      if (!is_semisimple(setup.tensor(), vertical)) continue;
      const bool compact = is_compact_type(setup.tensor(), vertical);
      if (has_compact_vertical(config.family) && !compact) continue;

      // Independent re-verification from a freshly built setup.
      const auto again = classify(build_family(spec));
      if (!again.conformal || again.totally_geodesic) continue;

      Counterexample ce{.spec = spec, .compact_type = compact, .violated = {}, .witness = {}, .witness_value = {}};
      for (const auto& c : totally_geodesic_conditions(spec)) {
        if (!c.holds()) ce.violated.push_back(c);
      }
      ce.witness = again.geodesic_witnesses.front();
      ce.witness_value = again.b_v.at(ce.witness);
      out.push_back(std::move(ce));
    }
  }
  return out;
}

}  // namespace foliate

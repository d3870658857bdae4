#include <gtest/gtest.h>

#include <set>

#include "foliate/document.hpp"
#include "foliate/error.hpp"
#include "foliate/verifier.hpp"
#include "oracle.hpp"

using foliate::FamilyId;
using foliate::FamilySpec;
using foliate::InputError;
using foliate::MetricFrame;
using foliate::Rational;
using foliate::SignatureMode;
using foliate::SweepConfig;

namespace {

std::map<std::string, Rational> all_zero_except(FamilyId id, std::map<std::string, Rational> nonzero) {
  std::map<std::string, Rational> out;
  for (auto name : foliate::parameter_names(id)) out[std::string(name)] = Rational();
  for (auto& [k, v] : nonzero) out[k] = v;
  return out;
}

SweepConfig config(FamilyId id, std::size_t samples, std::uint64_t seed = 7) {
  SweepConfig c;
  c.family = id;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Sampling, StreamsAreReproducibleAndIndependentOfOrder) {
  auto a = foliate::sample_stream(42, 3);
  auto b = foliate::sample_stream(42, 3);
  auto c = foliate::sample_stream(42, 4);
  auto d = foliate::sample_stream(43, 3);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_NE(first, d());
}

TEST(Sampling, UniformIntAndRationalRanges) {
  auto rng = oracle::stream(40);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto v = foliate::uniform_int(rng, -3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  int zeros = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto r = foliate::random_rational(rng, 4);
    ASSERT_LE(r.abs(), Rational(4));
    zeros += r.is_zero();
  }
  // 1/4 forced zeros plus 1/9 * 3/4 from p = 0: about 1/3 overall.
  EXPECT_GT(zeros, 1100);
  EXPECT_LT(zeros, 1600);
}

TEST(Sampling, So2DrawsLieOnTheConformalAndJacobiLoci) {
  auto rng = oracle::stream(41);
  for (auto id : {FamilyId::kSU2xSO2, FamilyId::kSL2RxSO2}) {
    for (int i = 0; i < 200; ++i) {
      const MetricFrame sig(oracle::random_signature(rng, 6));
      const auto s = foliate::draw_spec(id, sig, rng, {});
      ASSERT_TRUE(foliate::so2_conformality_violations(s).empty());
      ASSERT_TRUE(foliate::so2_jacobi_violations(s).empty());
      ASSERT_EQ(s.signature(), sig);
    }
  }
}

TEST(Sampling, PinsAreAppliedAndInfeasiblePinsThrow) {
  auto rng = oracle::stream(42);
  foliate::SamplingOptions opts;
  opts.pinned = {{"b11", Rational(1)}, {"c22", Rational(-2, 3)}};
  const auto s = foliate::draw_spec(FamilyId::kSU2, MetricFrame::riemannian(5), rng, opts);
  EXPECT_EQ(s.param("b11"), Rational(1));
  EXPECT_EQ(s.param("c22"), Rational(-2, 3));
  opts.pinned = {{"x1", Rational(1)}, {"y2", Rational(2)}};
  std::size_t rejected = 0;
  EXPECT_THROW(foliate::draw_spec(FamilyId::kSU2xSO2, MetricFrame::riemannian(6), rng, opts, &rejected), InputError);
  opts.pinned = {{"nope", Rational(1)}};
  EXPECT_THROW(foliate::draw_spec(FamilyId::kSU2, MetricFrame::riemannian(5), rng, opts), InputError);
}

TEST(SweepConfig, ValidationAndSignatureLists) {
  auto c = config(FamilyId::kSU2, 0);
  EXPECT_THROW(c.validate(), InputError);
  c.samples = 1;
  c.range = 0;
  EXPECT_THROW(c.validate(), InputError);
  c.range = 6;
  EXPECT_EQ(c.signature_list().size(), 32u);
  c.signatures = SignatureMode::kRiemannianOnly;
  ASSERT_EQ(c.signature_list().size(), 1u);
  EXPECT_TRUE(c.signature_list()[0].is_riemannian());
  c.signatures = SignatureMode::kFixed;
  EXPECT_THROW(c.validate(), InputError);
  c.fixed_signatures = {MetricFrame::riemannian(6)};
  EXPECT_THROW(c.validate(), InputError);
  c.fixed_signatures = {MetricFrame({1, -1, 1, 1, 1})};
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(config(FamilyId::kSU2xSU2, 1).signature_list().size(), 256u);
  EXPECT_EQ(config(FamilyId::kSL2RxSO2, 1).signature_list().size(), 64u);
  EXPECT_EQ(foliate::parse_signature_mode("riemannian-only"), SignatureMode::kRiemannianOnly);
  EXPECT_FALSE(foliate::parse_signature_mode("some").has_value());
}

TEST(ThetaOracle, AgreesWithClosedFormOnRandomDraws) {
  auto rng = oracle::stream(43);
  for (auto id : foliate::kAllFamilies) {
    for (int i = 0; i < 30; ++i) {
      const auto s = foliate::draw_spec(id, MetricFrame::riemannian(foliate::family_dimension(id)), rng, {});
      const auto solved = foliate::oracle_solve_theta(s);
      const auto closed = foliate::closed_form_theta(s);
      if (!foliate::is_so2_family(id)) {
        ASSERT_EQ(solved.status, foliate::ThetaSolution::Status::kUnique) << foliate::family_name(id);
        ASSERT_EQ(solved.theta, closed);
        continue;
      }
      const bool pinned = !(s.param("x1") + s.param("y2")).is_zero();
      if (pinned) {
        ASSERT_EQ(solved.status, foliate::ThetaSolution::Status::kUnique);
        ASSERT_EQ(solved.theta, closed);
      } else {
        ASSERT_EQ(solved.status, foliate::ThetaSolution::Status::kUnderdetermined);
        ASSERT_EQ(solved.dimension(), 1u);
        // The closed form (with its theta4) lies in the solution set.
        const auto shift = closed[3] - solved.theta[3];
        auto candidate = solved.theta;
        foliate::axpy(candidate, shift / solved.directions[0][3], solved.directions[0]);
        ASSERT_EQ(candidate, closed);
      }
    }
  }
}

TEST(Sweep, Su2AllSignaturesHasNoDisagreements) {
  const auto r = foliate::run_sweep(config(FamilyId::kSU2, 100));
  EXPECT_EQ(r.total_cases, 100u * 32u);
  EXPECT_TRUE(r.disagreements.empty());
  EXPECT_EQ(r.agreements + r.disagreements.size(), r.total_cases);
  EXPECT_EQ(r.minimality_counterexample_count, 0u);
  EXPECT_EQ(r.conformal_count, r.total_cases);
  EXPECT_EQ(r.semi_riemannian_count, r.total_cases);
  EXPECT_EQ(r.minimal_count, r.total_cases);
  EXPECT_GT(r.conjecture_counterexample_count, 0u);
  EXPECT_LT(r.totally_geodesic_count, r.total_cases);
}

TEST(Sweep, Su2RiemannianIsAlwaysTotallyGeodesic) {
  auto c = config(FamilyId::kSU2, 300);
  c.signatures = SignatureMode::kRiemannianOnly;
  const auto r = foliate::run_sweep(c);
  EXPECT_EQ(r.total_cases, 300u);
  EXPECT_EQ(r.totally_geodesic_count, 300u);
  EXPECT_EQ(r.conjecture_counterexample_count, 0u);
}

TEST(Sweep, FixedSignatureWithNonzeroB11YieldsCounterexamples) {
  auto c = config(FamilyId::kSU2, 50);
  c.signatures = SignatureMode::kFixed;
  c.fixed_signatures = {MetricFrame({1, -1, 1, 1, 1})};
  c.pinned = {{"b11", Rational(1)}};
  c.max_listed = 3;
  const auto r = foliate::run_sweep(c);
  EXPECT_TRUE(r.disagreements.empty());
  EXPECT_EQ(r.conjecture_counterexample_count, 50u);
  ASSERT_EQ(r.conjecture_counterexamples.size(), 3u);  // listing is capped, the count is not
  for (const auto& ce : r.conjecture_counterexamples) {
    EXPECT_FALSE(ce.totally_geodesic);
    EXPECT_TRUE(ce.conformal);
    EXPECT_FALSE(ce.notes.empty());
  }
}

TEST(Sweep, AllFamiliesAgreeWithCrossCheck) {
  for (auto id : foliate::kAllFamilies) {
    auto c = config(id, foliate::family_dimension(id) == 8 ? 4 : 15, 11);
    c.cross_check = true;
    const auto r = foliate::run_sweep(c);
    ASSERT_TRUE(r.disagreements.empty()) << foliate::family_name(id) << ": " << r.disagreements[0].notes[0];
    EXPECT_GT(r.oracle_checks, 0u);
    if (foliate::has_semisimple_vertical(id)) {
      EXPECT_EQ(r.minimality_counterexample_count, 0u);
    }
  }
}

TEST(Sweep, So2MinimalityStrata) {
  auto c = config(FamilyId::kSU2xSO2, 100, 3);
  c.pinned = {{"t14", Rational(0)}, {"t24", Rational(0)}};
  const auto r = foliate::run_sweep(c);
  EXPECT_TRUE(r.disagreements.empty());
  EXPECT_EQ(r.minimal_count, r.total_cases);
  EXPECT_GT(r.totally_geodesic_count, 0u);  // both directions of the biconditional are exercised
  EXPECT_LT(r.totally_geodesic_count, r.total_cases);
  c.pinned = {{"t24", Rational(1)}};
  const auto r2 = foliate::run_sweep(c);
  EXPECT_TRUE(r2.disagreements.empty());
  EXPECT_EQ(r2.minimal_count, 0u);
  EXPECT_EQ(r2.totally_geodesic_count, 0u);
}

TEST(Sweep, DeterministicAcrossRunsAndThreadCounts) {
  auto c = config(FamilyId::kSU2xSO2, 40, 99);
  c.threads = 1;
  const auto a = foliate::sweep_report_to_json(foliate::run_sweep(c));
  const auto b = foliate::sweep_report_to_json(foliate::run_sweep(c));
  c.threads = 4;
  const auto d = foliate::sweep_report_to_json(foliate::run_sweep(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  c.seed = 100;
  EXPECT_NE(a, foliate::sweep_report_to_json(foliate::run_sweep(c)));
}

TEST(Lemma, RawSo2TablesAreConformalIffConstraintHolds) {
  auto rng = oracle::stream(44);
  foliate::SamplingOptions raw;
  raw.raw_so2 = true;
  int conformal = 0, not_conformal = 0;
  for (auto id : {FamilyId::kSU2xSO2, FamilyId::kSL2RxSO2}) {
    for (int i = 0; i < 150; ++i) {
      const MetricFrame sig(oracle::random_signature(rng, 6));
      const auto s = foliate::draw_spec(id, sig, rng, raw);
      const bool constraint = foliate::so2_conformality_constraint(sig, s.param("x1"), s.param("y1"),
                                                                   s.param("x2"), s.param("y2"));
      ASSERT_EQ(constraint, foliate::so2_conformality_violations(s).empty());
      const auto setup = foliate::build_family(s, {.enforce_conformality = false});
      const auto report = foliate::classify(setup);
      ASSERT_EQ(report.conformal, constraint);
      ASSERT_EQ(foliate::conformal_vector_by_definition(setup).has_value(), constraint);
      (constraint ? conformal : not_conformal)++;
    }
  }
  EXPECT_GT(conformal, 0);
  EXPECT_GT(not_conformal, 0);
}

TEST(Counterexamples, Su2SplitSignatureExample) {
  auto c = config(FamilyId::kSU2, 5);
  c.signatures = SignatureMode::kFixed;
  c.fixed_signatures = {MetricFrame({1, -1, 1, 1, 1})};
  c.pinned = all_zero_except(FamilyId::kSU2, {{"b11", Rational(1)}});
  const auto list = foliate::find_conjecture_counterexamples(c);
  ASSERT_FALSE(list.empty());
  const auto& ce = list[0];
  EXPECT_TRUE(ce.compact_type);
  EXPECT_EQ(ce.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
  // B^V(A,B) = -eps_X X with eps_X = +1.
  EXPECT_EQ(ce.witness_value, foliate::scaled(foliate::unit_vector(5, 3), Rational(-1)));
  ASSERT_FALSE(ce.violated.empty());
  EXPECT_EQ(ce.violated[0].label, "(eps_B - eps_A)*b11");
}

TEST(Counterexamples, RiemannianSu2HasNone) {
  auto c = config(FamilyId::kSU2, 200);
  c.signatures = SignatureMode::kRiemannianOnly;
  EXPECT_TRUE(foliate::find_conjecture_counterexamples(c).empty());
  c.family = FamilyId::kSU2xSU2;
  c.samples = 50;
  EXPECT_TRUE(foliate::find_conjecture_counterexamples(c).empty());
}

TEST(Counterexamples, Su2xSu2SecondFactorExample) {
  auto c = config(FamilyId::kSU2xSU2, 3);
  c.signatures = SignatureMode::kFixed;
  c.fixed_signatures = {MetricFrame({1, 1, 1, 1, 1, -1, 1, 1})};  // eps_T = -eps_R
  c.pinned = all_zero_except(FamilyId::kSU2xSU2, {{"t14", Rational(1)}});
  const auto list = foliate::find_conjecture_counterexamples(c);
  ASSERT_FALSE(list.empty());
  EXPECT_TRUE(list[0].compact_type);
  bool names_t14 = false;
  for (const auto& v : list[0].violated) names_t14 |= v.label.find("t14") != std::string::npos;
  EXPECT_TRUE(names_t14);
}

TEST(Counterexamples, SplitFamiliesAreNotCompactAndSo2IsRejected) {
  auto c = config(FamilyId::kSL2R, 20);
  const auto list = foliate::find_conjecture_counterexamples(c);
  ASSERT_FALSE(list.empty());
  for (const auto& ce : list) EXPECT_FALSE(ce.compact_type);
  c.family = FamilyId::kSU2xSO2;
  EXPECT_THROW(foliate::find_conjecture_counterexamples(c), InputError);
  c.family = FamilyId::kSL2RxSO2;
  EXPECT_THROW(foliate::find_conjecture_counterexamples(c), InputError);
}

TEST(Counterexamples, EveryReturnedSpecReverifies) {
  for (auto id : {FamilyId::kSU2, FamilyId::kSU2xSU2, FamilyId::kSU2xSL2R}) {
    auto c = config(id, foliate::family_dimension(id) == 8 ? 3 : 30, 5);
    c.max_listed = 10;
    for (const auto& ce : foliate::find_conjecture_counterexamples(c)) {
      const auto setup = foliate::build_family(ce.spec);
      const auto r = foliate::classify(setup);
      ASSERT_TRUE(r.conformal);
      ASSERT_FALSE(r.totally_geodesic);
      ASSERT_TRUE(foliate::is_semisimple(setup.tensor(), setup.vertical()));
      ASSERT_EQ(ce.compact_type, foliate::is_compact_type(setup.tensor(), setup.vertical()));
      ASSERT_FALSE(foliate::is_zero(ce.witness_value));
      ASSERT_EQ(r.b_v.at(ce.witness), ce.witness_value);
    }
  }
}

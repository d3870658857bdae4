#include <gtest/gtest.h>

#include "foliate/error.hpp"
#include "foliate/families.hpp"
#include "foliate/geometry.hpp"
#include "foliate/verifier.hpp"
#include "oracle.hpp"

using foliate::FamilyId;
using foliate::FamilySpec;
using foliate::FoliationSetup;
using foliate::MetricFrame;
using foliate::Rational;
using foliate::StructureTensorBuilder;
using foliate::Vector;

namespace {

// Valid setups from every family under random signatures.
std::vector<FoliationSetup> sample_setups(std::uint64_t seed, int per_family) {
  std::vector<FoliationSetup> out;
  auto rng = oracle::stream(seed);
  for (auto id : foliate::kAllFamilies) {
    for (int i = 0; i < per_family; ++i) {
      const MetricFrame sig(oracle::random_signature(rng, foliate::family_dimension(id)));
      out.push_back(foliate::build_family(foliate::draw_spec(id, sig, rng, {})));
    }
  }
  return out;
}

std::vector<std::size_t> horizontal_list(const FoliationSetup& s) { return {s.horizontal()[0], s.horizontal()[1]}; }

FoliationSetup su2_plus_plane(std::vector<int> eps = {1, 1, 1, 1, 1}) {
  const auto t = StructureTensorBuilder(5)
                     .set(0, 1, {{2, Rational(2)}})
                     .set(2, 0, {{1, Rational(2)}})
                     .set(1, 2, {{0, Rational(2)}})
                     .build();
  return FoliationSetup(t, MetricFrame(std::move(eps)), {0, 1, 2}, {3, 4}, {"A", "B", "C", "X", "Y"});
}

}  // namespace

TEST(Connection, MatchesKoszulOracle) {
  for (const auto& s : sample_setups(20, 4)) {
    const auto nabla = foliate::connection_coefficients(s);
    const auto table = oracle::from_tensor(s.tensor());
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j)
        ASSERT_EQ(oracle::to_q(nabla.covariant_derivative(i, j)), oracle::nabla_basis(table, s.frame().epsilons(), i, j));
  }
}

TEST(Connection, TorsionFreeAndMetricCompatible) {
  for (const auto& s : sample_setups(21, 6)) {
    const auto nabla = foliate::connection_coefficients(s);
    const std::size_t n = s.dim();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // nabla_i e_j - nabla_j e_i = [e_i, e_j]
        ASSERT_EQ(nabla.covariant_derivative(i, j) - nabla.covariant_derivative(j, i), s.tensor().bracket_basis(i, j));
        for (std::size_t k = 0; k < n; ++k) {
          // e_i g(e_j, e_k) = 0 = g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k)
          const Rational lhs = s.frame().inner(nabla.covariant_derivative(i, j), foliate::unit_vector(n, k)) +
                               s.frame().inner(foliate::unit_vector(n, j), nabla.covariant_derivative(i, k));
          ASSERT_TRUE(lhs.is_zero());
        }
      }
    }
  }
}

TEST(Connection, RejectsJacobiViolationNamingTheTriple) {
  const auto t = StructureTensorBuilder(5)
                     .set(0, 1, {{2, Rational(2)}})
                     .set(2, 0, {{1, Rational(2)}})
                     .set(1, 2, {{0, Rational(2)}})
                     .set(3, 4, {{0, Rational(1)}})
                     .set(0, 3, {{1, Rational(1)}})
                     .build();
  const FoliationSetup s(t, MetricFrame::riemannian(5), {0, 1, 2}, {3, 4}, {"A", "B", "C", "X", "Y"});
  try {
    foliate::connection_coefficients(s);
    FAIL() << "expected InvalidAlgebraError";
  } catch (const foliate::InvalidAlgebraError& e) {
    EXPECT_NE(std::string(e.what()).find("Jacobi identity fails on ("), std::string::npos) << e.what();
  }
  EXPECT_THROW(foliate::classify(s), foliate::InvalidAlgebraError);
}

TEST(SecondFundamentalForms, ConnectionRouteMatchesOracleAndBracketRoute) {
  for (const auto& s : sample_setups(22, 6)) {
    const auto table = oracle::from_tensor(s.tensor());
    const auto eps = s.frame().epsilons();
    const auto bv = foliate::second_fundamental_form_vertical(s);
    ASSERT_EQ(bv, foliate::vertical_form_from_brackets(s));
    for (const auto& [pair, value] : bv) {
      ASSERT_EQ(oracle::to_q(value), oracle::second_form_vertical(table, eps, horizontal_list(s), pair.first, pair.second));
    }
    const auto bh = foliate::second_fundamental_form_horizontal(s);
    ASSERT_EQ(bh, foliate::horizontal_form_from_brackets(s));
    const auto [x, y] = s.horizontal();
    ASSERT_EQ(oracle::to_q(bh.xx), oracle::second_form_horizontal(table, eps, s.vertical(), x, x));
    ASSERT_EQ(oracle::to_q(bh.xy), oracle::second_form_horizontal(table, eps, s.vertical(), x, y));
    ASSERT_EQ(oracle::to_q(bh.yy), oracle::second_form_horizontal(table, eps, s.vertical(), y, y));
  }
}

TEST(SecondFundamentalForms, VanishOnSu2Family) {
  auto rng = oracle::stream(23);
  for (int i = 0; i < 50; ++i) {
    const MetricFrame sig(oracle::random_signature(rng, 5));
    const auto s = foliate::build_family(foliate::draw_spec(FamilyId::kSU2, sig, rng, {}));
    const auto bh = foliate::second_fundamental_form_horizontal(s);
    EXPECT_TRUE(foliate::is_zero(bh.xx));
    EXPECT_TRUE(foliate::is_zero(bh.xy));
    EXPECT_TRUE(foliate::is_zero(bh.yy));
  }
}

TEST(SecondFundamentalForms, AbelianAlgebraIsFlat) {
  const FoliationSetup s(foliate::StructureTensor::abelian(4), MetricFrame({1, -1, 1, -1}), {0, 1}, {2, 3});
  const auto r = foliate::classify(s);
  EXPECT_TRUE(r.conformal && r.semi_riemannian && r.minimal && r.totally_geodesic);
  for (const auto& [pair, value] : r.b_v) EXPECT_TRUE(foliate::is_zero(value));
}

// The SO(2) lemma proof: eps_X B^H(X,X) - eps_Y B^H(Y,Y) = eps_T (x1 - y2) T and
// B^H(X,Y) = 1/2 eps_T (eps_X x2 + eps_Y y1) T, for raw tables.
TEST(SecondFundamentalForms, So2LemmaProofFormulas) {
  auto rng = oracle::stream(24);
  for (int i = 0; i < 200; ++i) {
    const MetricFrame sig(oracle::random_signature(rng, 6));
    std::map<std::string, Rational> p;
    for (auto name : {"b11", "b21", "c11", "c12", "c21", "c22", "x1", "x2", "y1", "y2"})
      p[name] = oracle::small_rational(rng);
    const FamilySpec spec(i % 2 ? FamilyId::kSU2xSO2 : FamilyId::kSL2RxSO2, p, sig);
    const auto s = foliate::build_family(spec, {.enforce_conformality = false});
    const auto bh = foliate::second_fundamental_form_horizontal(s);
    const int et = sig.epsilon(3), ex = sig.epsilon(4), ey = sig.epsilon(5);
    Vector diff = foliate::scaled(bh.xx, Rational(ex)) - foliate::scaled(bh.yy, Rational(ey));
    Vector expected(6);
    expected[3] = Rational(et) * (p["x1"] - p["y2"]);
    EXPECT_EQ(diff, expected);
    Vector expected_xy(6);
    expected_xy[3] = Rational(1, 2) * Rational(et) * (Rational(ex) * p["x2"] + Rational(ey) * p["y1"]);
    EXPECT_EQ(bh.xy, expected_xy);
    // x1 = y2 = 1: the difference vanishes; B^H(X,X) = eps_T eps_X x1 T.
    if (i < 10) {
      auto q = p;
      q["x1"] = q["y2"] = Rational(1);
      q["x2"] = q["y1"] = Rational();
      const auto s1 = foliate::build_family(FamilySpec(spec.id(), q, sig), {.enforce_conformality = false});
      const auto bh1 = foliate::second_fundamental_form_horizontal(s1);
      Vector xx(6);
      xx[3] = Rational(et * ex);
      EXPECT_EQ(bh1.xx, xx);
      EXPECT_TRUE(foliate::is_zero(foliate::scaled(bh1.xx, Rational(ex)) - foliate::scaled(bh1.yy, Rational(ey))));
    }
  }
}

TEST(Classify, FrameCriteriaAgreeWithDefinition) {
  int conformal = 0, non_conformal = 0;
  auto setups = sample_setups(25, 5);
  // Non-conformal inputs: raw SO(2) tables off the conformal locus.
  auto rng = oracle::stream(26);
  for (int i = 0; i < 40; ++i) {
    std::map<std::string, Rational> p;
    for (auto name : {"b11", "c12", "x1", "x2", "y1", "y2"}) p[name] = oracle::small_rational(rng);
    setups.push_back(foliate::build_family(
        FamilySpec(FamilyId::kSU2xSO2, p, MetricFrame(oracle::random_signature(rng, 6))), {.enforce_conformality = false}));
  }
  for (const auto& s : setups) {
    const auto report = foliate::classify(s);
    const auto [x, y] = s.horizontal();
    const auto v = oracle::conformal_vector(oracle::from_tensor(s.tensor()), s.frame().epsilons(), s.vertical(), x, y);
    ASSERT_EQ(report.conformal, v.has_value());
    const auto by_solve = foliate::conformal_vector_by_definition(s);
    ASSERT_EQ(by_solve.has_value(), report.conformal);
    if (v) {
      ++conformal;
      ASSERT_EQ(oracle::to_q(report.conformal_vector), *v);
      ASSERT_EQ(*by_solve, report.conformal_vector);
      ASSERT_EQ(report.semi_riemannian, foliate::is_zero(report.conformal_vector));
    } else {
      ++non_conformal;
      ASSERT_FALSE(report.semi_riemannian);
    }
  }
  EXPECT_GT(conformal, 0);
  EXPECT_GT(non_conformal, 0);
}

TEST(Classify, MeanCurvatureAndWitnesses) {
  for (const auto& s : sample_setups(27, 5)) {
    const auto r = foliate::classify(s);
    Vector trace(s.dim());
    for (auto v : s.vertical()) foliate::axpy(trace, Rational(s.frame().epsilon(v)), r.b_v.at({v, v}));
    ASSERT_EQ(trace, r.mean_curvature);
    ASSERT_EQ(r.minimal, foliate::is_zero(trace));
    std::size_t nonzero = 0;
    for (const auto& [pair, value] : r.b_v) nonzero += !foliate::is_zero(value);
    ASSERT_EQ(r.geodesic_witnesses.size(), nonzero);
    ASSERT_EQ(r.totally_geodesic, nonzero == 0);
    // Bilinear form keyed by unordered pairs over the vertical set.
    const std::size_t m = s.vertical().size();
    ASSERT_EQ(r.b_v.size(), m * (m + 1) / 2);
  }
}

TEST(Classify, Su2SignatureFlipGivesWitness) {
  // b11 = 1, eps_B = -eps_A: B^V(A,B) = 1/2 eps_X (eps_B - eps_A) X = -eps_X X.
  for (int ex : {1, -1}) {
    const FamilySpec spec(FamilyId::kSU2, {{"b11", Rational(1)}}, MetricFrame({1, -1, 1, ex, 1}));
    const auto r = foliate::classify(foliate::build_family(spec));
    EXPECT_TRUE(r.conformal && r.semi_riemannian && r.minimal);
    EXPECT_FALSE(r.totally_geodesic);
    Vector expected(5);
    expected[3] = Rational(-ex);
    EXPECT_EQ(r.b_v.at({0, 1}), expected);
  }
}

TEST(BracketCondition, HoldsOnFamiliesAndFailsOnHorizontalLeak) {
  for (const auto& s : sample_setups(28, 3)) EXPECT_TRUE(foliate::check_conformal_bracket_condition(s));
  // [A,X] with a Y component and [B,C] = 2A: [[B,C],X] = 2[A,X] has a horizontal part.
  const auto t = StructureTensorBuilder(5)
                     .set(0, 1, {{2, Rational(2)}})
                     .set(2, 0, {{1, Rational(2)}})
                     .set(1, 2, {{0, Rational(2)}})
                     .set(0, 3, {{4, Rational(1)}})
                     .build();
  EXPECT_FALSE(foliate::check_conformal_bracket_condition(FoliationSetup(t, MetricFrame::riemannian(5), {0, 1, 2}, {3, 4})));
  const FoliationSetup abelian_vertical(foliate::StructureTensor::abelian(4), MetricFrame::riemannian(4), {0, 1}, {2, 3});
  EXPECT_TRUE(foliate::check_conformal_bracket_condition(abelian_vertical));
}

TEST(ProductCondition, FamiliesAndErrors) {
  auto rng = oracle::stream(29);
  for (auto id : {FamilyId::kSU2xSU2, FamilyId::kSU2xSL2R}) {
    for (int i = 0; i < 20; ++i) {
      const auto s = foliate::build_family(foliate::draw_spec(id, MetricFrame(oracle::random_signature(rng, 8)), rng, {}));
      EXPECT_TRUE(foliate::check_product_condition(s, {{0, 1, 2}, {3, 4, 5}}));
    }
  }
  // SU2 x SO2 with x1 c12 != 0: [T,X] has an A component.
  const FamilySpec so2(FamilyId::kSU2xSO2, {{"x1", Rational(1)}, {"y2", Rational(1)}, {"c12", Rational(1)}},
                       MetricFrame::riemannian(6));
  const auto s = foliate::build_family(so2);
  EXPECT_FALSE(foliate::check_product_condition(s, {{0, 1, 2}, {3}}));
  EXPECT_TRUE(foliate::check_product_condition(s, {{0, 1, 2, 3}}));
  EXPECT_TRUE(foliate::check_product_condition(su2_plus_plane(), {{0, 1, 2}}));
  EXPECT_THROW(foliate::check_product_condition(su2_plus_plane(), {{0, 1}, {2}}), foliate::InputError);  // not ideals
  EXPECT_THROW(foliate::check_product_condition(su2_plus_plane(), {{0, 1, 2, 3}}), foliate::InputError);  // horizontal
  EXPECT_THROW(foliate::check_product_condition(su2_plus_plane(), {{0, 1}}), foliate::InputError);  // not a partition
}

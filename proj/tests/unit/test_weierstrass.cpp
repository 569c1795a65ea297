#include <gtest/gtest.h>

#include <random>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/quadrature.hpp"
#include "pluriminimal/sampling.hpp"
#include "pluriminimal/weierstrass.hpp"
#include "test_support.hpp"

namespace pluri {
namespace {

WeierstrassData forms(int m, std::vector<std::vector<const char*>> coeffs) {
  WeierstrassData d;
  d.arity = m;
  for (const auto& row : coeffs) {
    OneForm f;
    for (const char* c : row) f.coeffs.push_back(parse_expr(c, m));
    d.forms.push_back(f);
  }
  d.basepoint.assign(static_cast<std::size_t>(m), Complex());
  d.constant.assign(d.forms.size(), 0.0);
  return d;
}

WeierstrassData family_data(const char* f, const char* g) {
  return split_pairs(solve_family({parse_expr(f, 1), parse_expr(g, 1)})).data;
}

std::vector<Point> samples(int m, std::size_t n = 50) { return polydisk_samples(m, 2.0, n, 99); }

TEST(Conformality, IsotropicPairVanishes) {
  const auto d = forms(2, {{"1", "0"}, {"1i", "0"}});
  for (const auto& z : samples(2, 10)) EXPECT_EQ(conformality(d, z).residual(), 0.0);
}

TEST(Conformality, CoordinateFormsGiveIdentity) {
  const auto d = forms(2, {{"1", "0"}, {"0", "1"}});
  const auto t = conformality(d, {{0.5, 1}, {2, -1}});
  EXPECT_EQ(t.entries, Eigen::Matrix2cd::Identity());
}

TEST(Conformality, FuruhataVanishes) {
  const auto d = family_data("z1^3", "0");
  EXPECT_LT(conformality(d, {{1, 1}, {2, -1}}).residual(), 1e-12);
  EXPECT_TRUE(check_conformality(d, samples(2, 100)).passed);
}

TEST(Closed, ExactFormPasses) {
  const auto r = check_closed(forms(2, {{"z2", "z1"}}), samples(2));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.worst_residual, 0.0);
}

TEST(Closed, NonClosedFormFailsWithUnitResidual) {
  const auto r = check_closed(forms(2, {{"z2", "0"}}), samples(2));
  EXPECT_FALSE(r.passed);
  EXPECT_DOUBLE_EQ(r.worst_residual, 1.0);
  EXPECT_EQ(r.worst_form, 0u);
}

TEST(Closed, FamilyOutputsPass) {
  for (auto [f, g] : {std::pair{"z1^3", "0"}, {"0", "0"}, {"exp(z1)", "sin(z1)"}, {"z1^2", "z1^2"}}) {
    EXPECT_TRUE(check_closed(family_data(f, g), samples(2)).passed) << f << ", " << g;
  }
}

TEST(Rank, DegenerateAndFull) {
  EXPECT_FALSE(check_rank(forms(2, {{"1", "0"}, {"1i", "0"}}), samples(2)).passed);
  const auto full = check_rank(forms(2, {{"1", "0"}, {"1i", "0"}, {"0", "1"}, {"0", "1i"}}), samples(2));
  EXPECT_TRUE(full.passed);
  EXPECT_EQ(full.worst_rank, 2);
  EXPECT_TRUE(check_rank(family_data("z1^3", "0"), samples(2, 100)).passed);
}

TEST(Immerse, TrivialFamilyAtKnownPoint) {
  const auto d = family_data("0", "0");
  const auto f = immerse(d, {{1, 1}, {2, 0}});
  const std::vector<double> expected{2, 2, 1, 1, 2, 0};
  ASSERT_EQ(f.size(), expected.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(f[i], expected[i], 1e-15);
}

TEST(Immerse, BasepointGivesConstant) {
  auto d = family_data("z1^3", "z1^2");
  d.basepoint = {{0.5, -0.25}, {1, 1}};
  d.constant = {1, 2, 3, 4, 5, 6};
  EXPECT_EQ(immerse(d, d.basepoint), d.constant);
  d.primitives.reset();
  const auto q = immerse(d, d.basepoint);
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i], d.constant[i], 1e-15);
}

TEST(Immerse, PrimitiveAndQuadraturePathsAgree) {
  std::mt19937_64 rng(21);
  const std::vector<std::pair<const char*, const char*>> fg{
      {"z1^3", "0"}, {"exp(z1)", "sin(z1)"}, {"z1^5-z1", "0.5*z1^4"}, {"cos(z1)", "z1^3"}, {"0", "exp(0.5*z1)"}};
  for (int t = 0; t < 50; ++t) {
    auto d = family_data(fg[static_cast<std::size_t>(t) % fg.size()].first, fg[static_cast<std::size_t>(t) % fg.size()].second);
    d.basepoint = testing::random_point(rng, 2, 1.0);
    const Point q = testing::random_point(rng, 2, 1.5);
    const auto exact = immerse(d, q);
    d.primitives.reset();
    const auto quad = immerse(d, q);
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(quad[i], exact[i], 1e-10 * std::max(1.0, std::abs(exact[i])));
  }
}

TEST(Immerse, StraightAndDoglegPathsAgree) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    auto d = family_data(t % 2 ? "z1^4" : "exp(z1)", t % 3 ? "sin(z1)" : "z1^2");
    d.primitives.reset();
    const Point q = testing::random_point(rng, 2, 1.5);
    const Point mid = testing::random_point(rng, 2, 1.5);
    const Point straight[] = {d.basepoint, q};
    const Point dogleg[] = {d.basepoint, mid, q};
    const auto a = integrate_polygon(d, straight);
    const auto b = integrate_polygon(d, dogleg);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(Immerse, NonClosedFormsArePathDependent) {
  auto d = forms(2, {{"z2", "0"}});
  const Point straight[] = {{{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}};
  const Point dogleg[] = {{{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{1, 0}, {1, 0}}};
  EXPECT_NEAR(integrate_polygon(d, straight)[0], 0.5, 1e-12);
  EXPECT_NEAR(integrate_polygon(d, dogleg)[0], 1.0, 1e-12);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre_rule(10);
  double s = 0, x18 = 0;
  for (auto [x, w] : rule) {
    s += w;
    x18 += w * std::pow(x, 18);
  }
  EXPECT_NEAR(s, 2.0, 1e-15);
  EXPECT_NEAR(x18, 2.0 / 19.0, 1e-15);
}

TEST(Data, ValidationAndWarnings) {
  auto d = forms(2, {{"1", "0"}});
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.warnings().size(), 1u);
  d.forms[0].coeffs.pop_back();
  EXPECT_THROW(d.validate(), InvalidArgument);
  const auto fam = family_data("z1^3", "0");
  EXPECT_TRUE(fam.warnings().empty());
  EXPECT_LT(primitive_consistency(fam, samples(2)), 1e-10);
}

}  // namespace
}  // namespace pluri

#include <gtest/gtest.h>

#include <random>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/geometry.hpp"
#include "pluriminimal/polynomial.hpp"
#include "pluriminimal/sampling.hpp"
#include "test_support.hpp"

namespace pluri {
namespace {

SixFunctions six_of(const char* f, const char* g) { return solve_family({parse_expr(f, 1), parse_expr(g, 1)}); }

Polynomial poly(const HoloExpr& e) {
  auto p = Polynomial::from_expr(e);
  EXPECT_TRUE(p.has_value()) << to_string(e);
  return p ? *p : Polynomial(e.arity());
}

Polynomial poly(const char* text) { return poly(parse_expr(text, 2)); }

TEST(SolveFamily, FuruhataCoefficients) {
  const auto six = six_of("z1^3", "0");
  EXPECT_EQ(poly(six.p[0]), poly("z1*z2"));
  EXPECT_EQ(poly(six.p[1]), poly("-1.5*z2^2"));
  EXPECT_EQ(poly(six.p[2]), poly("z1"));
  EXPECT_EQ(poly(six.p[3]), poly("-0.5*z2^3"));
  EXPECT_EQ(poly(six.p[4]), poly("z2"));
  EXPECT_EQ(poly(six.p[5]), poly("-1.5*z1*z2^2"));
}

TEST(SolveFamily, ZeroFunctionsGiveTheGraph) {
  const auto six = six_of("0", "0");
  EXPECT_TRUE(six.p[1].is_zero());
  EXPECT_TRUE(six.p[3].is_zero());
  EXPECT_TRUE(six.p[5].is_zero());
}

TEST(SolveFamily, SquaresExample) {
  const auto six = six_of("z1^2", "z1^2");
  EXPECT_EQ(poly(six.p[1]), poly("-z1-z2"));
  EXPECT_LT(system_residual(six, polydisk_samples(2, 2.0, 100, 1)), 1e-12);
}

TEST(SolveFamily, SystemAndRelationResidualsVanish) {
  std::mt19937_64 rng(14);
  const auto pts = polydisk_samples(2, 2.0, 100, 2);
  for (int t = 0; t < 10; ++t) {
    const auto six = solve_family({testing::random_polynomial(rng, 5), testing::random_polynomial(rng, 5)});
    EXPECT_LT(system_residual(six, pts), 1e-12);
    EXPECT_LT(relation_residual(six, pts), 1e-12);
  }
  const auto six = six_of("exp(z1)", "sin(z1)");
  EXPECT_LT(system_residual(six, pts), 1e-12);
  EXPECT_LT(relation_residual(six, pts), 1e-12);
}

TEST(SolveFamily, RejectsWrongArity) {
  EXPECT_THROW(solve_family({parse_expr("z1*z2", 2), parse_expr("0", 1)}), InvalidArgument);
}

TEST(SplitPairs, CanonicalPairing) {
  const auto six = six_of("z1^3", "0");
  const auto pairs = canonical_pairs(six);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(poly(pairs[0].second), poly("1.5*z2^2"));
  const auto split = split_pairs(six);
  EXPECT_EQ(split.data.size(), 6u);
  ASSERT_TRUE(split.data.primitives.has_value());
}

TEST(SplitPairs, TrivialFamilyIsTheRealification) {
  const auto split = split_pairs(six_of("0", "0"));
  const auto& p = *split.data.primitives;
  EXPECT_EQ(poly(p[0]), poly("z1*z2"));
  EXPECT_EQ(poly(p[1]), poly("-1i*z1*z2"));
  for (const auto& z : polydisk_samples(2, 2.0, 20, 5)) EXPECT_EQ(conformality(split.data, z).residual(), 0.0);
}

TEST(SplitPairs, SignFlippedPairingIsNotConformal) {
  const auto six = six_of("z1^3", "0");
  const std::vector<IsotropicPair> flipped{{six.p[0], six.p[1]}, {six.p[2], six.p[3]}, {six.p[4], six.p[5]}};
  const auto bad = pairs_to_data(flipped);
  const Point z{{1, 1}, {2, -1}};
  // The residual is 8 dP1.dP2 while the canonical pairing cancels it.
  const auto j1 = eval_jet2(six.p[0], z), j2 = eval_jet2(six.p[1], z);
  const double scale = std::abs(4.0 * j1.grad[0] * j2.grad[0]);
  EXPECT_GT(conformality(bad, z).residual(), scale);
  EXPECT_LT(conformality(split_pairs(six).data, z).residual(), 1e-12);
}

TEST(SplitPairs, InconsistentRelationIsRejected) {
  auto six = six_of("z1^3", "0");
  six.p[1] = -six.p[1];
  try {
    split_pairs(six);
    FAIL() << "expected RejectedRelation";
  } catch (const RejectedRelation& e) {
    EXPECT_GT(e.residual(), 0.1);
  }
}

TEST(EndToEnd, RandomPolynomialFamiliesSatisfyAllConditions) {
  std::mt19937_64 rng(15);
  const auto pts = polydisk_samples(2, 2.0, 100, 6);
  Sampler dirs(7);
  for (int t = 0; t < 10; ++t) {
    const auto d = split_pairs(solve_family({testing::random_polynomial(rng, 5), testing::random_polynomial(rng, 5)})).data;
    EXPECT_TRUE(check_closed(d, pts).passed);
    EXPECT_TRUE(check_conformality(d, pts, 1e-12).passed) << check_conformality(d, pts).worst_residual;
    EXPECT_TRUE(check_rank(d, pts).passed);
    for (int l = 0; l < 10; ++l) {
      EXPECT_LT(fd_line_mean_curvature(d, pts[static_cast<std::size_t>(l)], dirs.unit_direction(2)), 1e-6);
    }
  }
}

TEST(Probe, FuruhataMapIsNotHolomorphicInTheStandardPairing) {
  const auto d = split_pairs(six_of("z1^3", "0")).data;
  const auto z = testing::extend(Point{{0.7, -0.4}, {1.1, 0.3}});
  const long double h = 1e-5L;
  double worst = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    auto at = [&](testing::LComplex s) {
      auto w = z;
      w[j] += s;
      return immerse_extended(d, w);
    };
    const auto xp = at({h, 0}), xm = at({-h, 0}), yp = at({0, h}), ym = at({0, -h});
    for (std::size_t k = 0; k < 3; ++k) {
      const testing::LComplex fx((xp[2 * k] - xm[2 * k]) / (2 * h), (xp[2 * k + 1] - xm[2 * k + 1]) / (2 * h));
      const testing::LComplex fy((yp[2 * k] - ym[2 * k]) / (2 * h), (yp[2 * k + 1] - ym[2 * k + 1]) / (2 * h));
      worst = std::max(worst, static_cast<double>(std::abs(0.5L * (fx + testing::LComplex(0, 1) * fy))));
    }
  }
  EXPECT_GT(worst, 0.1);
}

TEST(PairsToData, RejectsMixedArity) {
  const std::vector<IsotropicPair> pairs{{parse_expr("z1", 1), parse_expr("z1", 2)}};
  EXPECT_THROW(pairs_to_data(pairs), InvalidArgument);
}

}  // namespace
}  // namespace pluri

#include <gtest/gtest.h>

#include <random>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/geometry.hpp"
#include "pluriminimal/sampling.hpp"
#include "test_support.hpp"

namespace pluri {
namespace {

WeierstrassData family_data(const char* f, const char* g) {
  return split_pairs(solve_family({parse_expr(f, 1), parse_expr(g, 1)})).data;
}

WeierstrassData from_primitives(int m, std::vector<const char*> ps) {
  std::vector<HoloExpr> e;
  for (const char* p : ps) e.push_back(parse_expr(p, m));
  return WeierstrassData::from_primitives(e);
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Pullback of the euclidean metric by central differences of the real map.
Eigen::MatrixXd fd_metric(const WeierstrassData& d, const Point& z) {
  const int m = d.arity;
  const long double h = 1e-5L;
  const auto zl = testing::extend(z);
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(d.size()), 2 * m);
  for (int a = 0; a < 2 * m; ++a) {
    auto shift = [&](long double s) {
      auto w = zl;
      w[static_cast<std::size_t>(a % m)] += a < m ? testing::LComplex(s, 0) : testing::LComplex(0, s);
      return immerse_extended(d, w);
    };
    const auto p = shift(h), q = shift(-h);
    for (std::size_t i = 0; i < p.size(); ++i) jac(static_cast<Eigen::Index>(i), a) = static_cast<double>((p[i] - q[i]) / (2 * h));
  }
  return jac.transpose() * jac;
}

TEST(MetricBlocks, AssemblyIsExact) {
  const auto d = family_data("z1^3", "0");
  const auto b = metric_blocks(d, {{0.3, 0.2}, {-1, 0.5}});
  EXPECT_EQ(b.metric.topLeftCorner(2, 2), b.AAt);
  EXPECT_EQ(b.metric.topRightCorner(2, 2), -b.ABt);
  EXPECT_EQ(b.metric.bottomLeftCorner(2, 2), -b.BAt);
  EXPECT_EQ(b.metric.bottomRightCorner(2, 2), b.BBt);
}

TEST(MetricBlocks, MatchesPullbackOracle) {
  for (auto [f, g] : {std::pair{"0", "0"}, {"z1^3", "0"}, {"exp(z1)", "z1^2"}}) {
    const auto d = family_data(f, g);
    for (const auto& z : polydisk_samples(2, 1.5, 10, 3)) {
      const auto b = metric_blocks(d, z);
      const Eigen::MatrixXd oracle = fd_metric(d, z);
      EXPECT_LT(max_abs(b.metric - oracle), 1e-7 * std::max(1.0, max_abs(oracle))) << f;
    }
  }
}

TEST(MetricBlocks, HolomorphicGraphIdentities) {
  const auto d = family_data("0", "0");
  for (const auto& z : polydisk_samples(2, 2.0, 20, 4)) {
    const auto k = kahler_diagnostics(metric_blocks(d, z));
    EXPECT_LT(k.aa_minus_bb, 1e-12);
    EXPECT_LT(k.ab_symmetric_part, 1e-12);
  }
}

TEST(MetricBlocks, OffDiagonalBlockIsAntisymmetricAndGenerallyNonzero) {
  // Conformality forces AB^t + BA^t = 0, not AB^t = 0.
  const auto d = family_data("0", "0");
  const auto b = metric_blocks(d, {{1, 1}, {2, 0}});
  EXPECT_LT(max_abs(b.ABt + b.ABt.transpose()), 1e-12);
  EXPECT_GT(std::abs(b.ABt(0, 1)), 0.5);
}

TEST(MetricBlocks, FlatChartMetric) {
  const auto d = from_primitives(2, {"z1", "1i*z1", "z2", "1i*z2"});
  const Point z{{0.7, -0.1}, {0.2, 0.9}};
  const auto b = metric_blocks(d, z);
  const Eigen::MatrixXd oracle = fd_metric(d, z);
  EXPECT_LT(max_abs(b.metric - oracle), 1e-9);
  const auto k = kahler_diagnostics(b);
  EXPECT_GT(k.min_eigenvalue, 0.0);
  EXPECT_LT(k.j_invariance, 1e-15);
}

TEST(MetricBlocks, NonConformalDataIsDetected) {
  const auto d = from_primitives(2, {"z1", "z2"});
  const auto k = kahler_diagnostics(metric_blocks(d, {{0.1, 0.2}, {0.3, 0.4}}));
  EXPECT_GT(std::max({k.ab_norm, k.ba_norm, k.aa_minus_bb}), 0.5);
  EXPECT_GT(k.j_invariance, 0.5);
}

TEST(MetricBlocks, ConformalityImpliesBlockIdentities) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const HoloExpr f = testing::random_polynomial(rng, 5);
    const HoloExpr g = testing::random_polynomial(rng, 5);
    const auto d = split_pairs(solve_family({f, g})).data;
    for (const auto& z : polydisk_samples(2, 2.0, 20, static_cast<std::uint64_t>(t))) {
      ASSERT_LT(conformality(d, z).residual(), 1e-12);
      const auto k = kahler_diagnostics(metric_blocks(d, z));
      EXPECT_LT(k.aa_minus_bb, 1e-10);
      EXPECT_LT(k.ab_symmetric_part, 1e-10);
      EXPECT_LT(k.j_invariance, 1e-10);
      EXPECT_GT(k.min_eigenvalue, 0.0);
    }
  }
}

TEST(SecondFundamentalForm, MatchesFiniteDifferenceHessian) {
  const auto d = family_data("z1^3", "z1^2");
  const Point z{{0.4, -0.3}, {0.8, 0.5}};
  const auto r = second_fundamental_form(d, z);
  const long double h = 1e-4L;
  const auto zl = testing::extend(z);
  auto at = [&](int a, long double sa, int b, long double sb) {
    auto w = zl;
    auto bump = [&](int c, long double s) {
      w[static_cast<std::size_t>(c % 2)] += c < 2 ? testing::LComplex(s, 0) : testing::LComplex(0, s);
    };
    bump(a, sa);
    bump(b, sb);
    return immerse_extended(d, w);
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const auto pp = at(a, h, b, h), pm = at(a, h, b, -h), mp = at(a, -h, b, h), mm = at(a, -h, b, -h);
      Eigen::VectorXd hess(6);
      for (int i = 0; i < 6; ++i) {
        const auto k = static_cast<std::size_t>(i);
        hess(i) = static_cast<double>((pp[k] - pm[k] - mp[k] + mm[k]) / (4 * h * h));
      }
      const Eigen::VectorXd normal = r.sff.normal_basis.transpose() * hess;
      for (int nu = 0; nu < 2; ++nu) EXPECT_NEAR(r.sff(a, b, nu), normal(nu), 1e-6);
      for (int nu = 0; nu < 2; ++nu) EXPECT_EQ(r.sff(a, b, nu), r.sff(b, a, nu));
    }
  }
}

TEST(SecondFundamentalForm, FramesAreOrthonormal) {
  const auto d = family_data("exp(z1)", "sin(z1)");
  const auto r = second_fundamental_form(d, {{0.2, 0.1}, {-0.5, 0.3}});
  Eigen::MatrixXd q(6, 6);
  q << r.sff.tangent_basis, r.sff.normal_basis;
  EXPECT_LT(max_abs(q.transpose() * q - Eigen::MatrixXd::Identity(6, 6)), 1e-12);
  const Eigen::MatrixXd t = real_jacobian(d, {{0.2, 0.1}, {-0.5, 0.3}});
  EXPECT_LT(max_abs(r.sff.normal_basis.transpose() * t), 1e-12);
}

TEST(SecondFundamentalForm, HolomorphicGraphIsCircular) {
  const auto d = family_data("0", "0");
  for (const auto& z : polydisk_samples(2, 2.0, 20, 8)) {
    EXPECT_LT(second_fundamental_form(d, z).circularity_residual, 1e-9);
  }
}

TEST(SecondFundamentalForm, AffineDataHasNoCurvature) {
  const auto d = from_primitives(2, {"z1+2*z2", "1i*z1", "z2", "(1+1i)*z2", "3*z1", "-1i*z2"});
  const auto r = second_fundamental_form(d, {{1, 2}, {3, -1}});
  for (double v : r.sff.values) EXPECT_EQ(v, 0.0);
}

TEST(SecondFundamentalForm, FuruhataRestrictionsAreMinimal) {
  const auto d = family_data("z1^3", "0");
  Sampler s(12);
  for (const auto& z : polydisk_samples(2, 2.0, 20, 10)) {
    std::vector<Point> dirs;
    for (int k = 0; k < 10; ++k) dirs.push_back(s.unit_direction(2));
    const auto r = second_fundamental_form(d, z, dirs);
    EXPECT_LT(r.circularity_residual, 1e-9);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      EXPECT_LT(r.mean_curvature_norms[k], 1e-9);
      EXPECT_LT(fd_line_mean_curvature(d, z, dirs[k]), 1e-6);
    }
  }
}

TEST(FiniteDifferenceMeanCurvature, SeesNonMinimalSurfaces) {
  // Graph of the harmonic function x^2 - y^2, which is not minimal away from the origin.
  const auto d = from_primitives(1, {"z1", "1i*z1", "z1^2"});
  EXPECT_GT(fd_line_mean_curvature(d, {{0.5, 0.1}}, {{1, 0}}), 1e-2);
  // A sphere of radius 2 through the origin: |H| = 1/2.
  SurfaceMap sphere = [](long double u, long double s) {
    const long double r = 2;
    return std::vector<long double>{r * std::sin(u + 1) * std::cos(s), r * std::sin(u + 1) * std::sin(s),
                                    r * std::cos(u + 1)};
  };
  EXPECT_NEAR(static_cast<double>(fd_mean_curvature(sphere, 1e-4L)), 0.5, 1e-6);
}

TEST(SecondFundamentalForm, RankDeficientPointIsAnError) {
  const auto d = from_primitives(2, {"z1", "1i*z1", "z1^2", "1i*z1^2"});
  EXPECT_THROW(second_fundamental_form(d, {{1, 0}, {0, 0}}), GeometryError);
}

TEST(GeometryReport, CollectsEverything) {
  const auto d = family_data("z1^3", "0");
  const Point dirs[] = {{{1, 0}, {0, 1}}};
  const auto r = geometry_report(d, {{0.5, 0.5}, {1, -1}}, dirs);
  EXPECT_EQ(r.jacobian_rank, 2);
  EXPECT_LT(r.conformality_residual, 1e-12);
  EXPECT_EQ(r.mean_curvature_norms.size(), 1u);
  EXPECT_EQ(r.sff.normal_dim, 2);
}

}  // namespace
}  // namespace pluri

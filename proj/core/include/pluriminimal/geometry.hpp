/**
 * @file geometry.hpp
 * @brief Induced metric, second fundamental form and curvature probes for the
 *        immersion defined by Weierstrass data.
 *
 * Real coordinates are z_k = x_k + i y_k with frame order (x_1..x_m, y_1..y_m)
 * and J(d/dx_k) = d/dy_k. Writing w_ik = a_ik + i b_ik, the m x n blocks are
 * A = (a_ik)^t and B = (b_ik)^t, so df(d/dx_k) is row k of A, df(d/dy_k) is
 * minus row k of B and the metric is [[AA^t, -AB^t], [-BA^t, BB^t]].
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pluriminimal/weierstrass.hpp"

namespace pluri {

struct MetricBlocks {
  Eigen::MatrixXd A;  // m x n, A(k, i) = Re w_ik
  Eigen::MatrixXd B;  // m x n, B(k, i) = Im w_ik
  Eigen::MatrixXd AAt, ABt, BAt, BBt;
  Eigen::MatrixXd metric;  // 2m x 2m, assembled from the blocks above
};

MetricBlocks metric_blocks(const WeierstrassData& data, const Point& z);

/// Matrix of J acting on coordinate vectors in the (x, y) frame.
Eigen::MatrixXd complex_structure(int m);

/// n x 2m real jacobian, columns df(d/dx_k) then df(d/dy_k).
Eigen::MatrixXd real_jacobian(const WeierstrassData& data, const Point& z);

/// Real coordinate vector (Re v, Im v) of a complex tangent direction.
Eigen::VectorXd real_direction(const Point& v);

/// Block identities implied by a vanishing conformality tensor. All norms are
/// max-abs entry norms.
struct KahlerDiagnostics {
  double ab_norm = 0.0;             // |AB^t|
  double ba_norm = 0.0;             // |BA^t|
  double aa_minus_bb = 0.0;         // |AA^t - BB^t|
  double ab_symmetric_part = 0.0;   // |AB^t + BA^t|
  double min_eigenvalue = 0.0;      // of the metric
  double j_invariance = 0.0;        // |J^t g J - g|
};

KahlerDiagnostics kahler_diagnostics(const MetricBlocks& blocks);

/// Normal part of the ambient second derivative. values is indexed
/// [(a * frame + b) * normal_dim + nu] over coordinate frame indices a, b.
struct SecondFundamentalForm {
  int frame_dim = 0;
  int normal_dim = 0;
  std::vector<double> values;
  Eigen::MatrixXd tangent_basis;  // n x 2m orthonormal
  Eigen::MatrixXd normal_basis;   // n x (n - 2m) orthonormal

  double operator()(int a, int b, int nu) const {
    return values[static_cast<std::size_t>((a * frame_dim + b) * normal_dim + nu)];
  }
  /// B(X, Y) in the normal basis.
  Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

struct SecondFundamentalFormResult {
  SecondFundamentalForm sff;
  /// max over frame vectors of |B(X, JY) - B(JX, Y)|.
  double circularity_residual = 0.0;
  /// |B(v, v) + B(Jv, Jv)| for each requested direction, v normalised to unit length.
  std::vector<double> mean_curvature_norms;
};

/// Throws GeometryError when the real jacobian has rank < 2m at z.
SecondFundamentalFormResult second_fundamental_form(const WeierstrassData& data, const Point& z,
                                                    std::span<const Point> directions = {});

/// Mean curvature vector norm of a parametrised surface at (0, 0) from central
/// differences with step h: |1/2 g^{ab} (d_a d_b f)^normal|.
using SurfaceMap = std::function<std::vector<long double>(long double u, long double s)>;
long double fd_mean_curvature(const SurfaceMap& f, long double h);

/// fd_mean_curvature of t -> f(z + t v), t = u + i s, through immerse_extended.
double fd_line_mean_curvature(const WeierstrassData& data, const Point& z, const Point& v,
                              double h = 1e-4);

/// Per-point summary of everything above.
struct GeometryReport {
  Point point;
  double conformality_residual = 0.0;
  int jacobian_rank = 0;
  double smallest_singular_value = 0.0;
  MetricBlocks blocks;
  SecondFundamentalForm sff;
  std::vector<double> mean_curvature_norms;
  double circularity_residual = 0.0;
};

GeometryReport geometry_report(const WeierstrassData& data, const Point& z,
                               std::span<const Point> directions = {},
                               double rank_tolerance = 1e-9);

}  // namespace pluri

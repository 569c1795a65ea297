/**
 * @file weierstrass.hpp
 * @brief Weierstrass data on domains of C^m and the three conditions that make
 *        f(Q) = Re \int_P^Q (w_1, ..., w_n) + c a pluriminimal immersion:
 *        closed holomorphic forms, vanishing conformality tensor
 *        sum_i w_i (x) w_i, and a complex jacobian (w_ik) of full rank.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pluriminimal/holo_expr.hpp"
#include "pluriminimal/jet.hpp"
#include "pluriminimal/quadrature.hpp"

namespace pluri {

/// A holomorphic (1,0)-form sum_j coeffs[j] dz_j.
struct OneForm {
  std::vector<HoloExpr> coeffs;

  int arity() const { return static_cast<int>(coeffs.size()); }
};

/// dF = sum_j (dF/dz_j) dz_j.
OneForm exterior_derivative(const HoloExpr& primitive);

struct WeierstrassData {
  int arity = 0;
  std::vector<OneForm> forms;
  /// Holomorphic P_i with dP_i = w_i, when known.
  std::optional<std::vector<HoloExpr>> primitives;
  Point basepoint;
  std::vector<double> constant;

  /// Forms dP_i, basepoint 0 and constant 0 unless given.
  static WeierstrassData from_primitives(std::vector<HoloExpr> primitives, Point basepoint = {},
                                         std::vector<double> constant = {});

  std::size_t size() const { return forms.size(); }
  /// Throws InvalidArgument on arity or size mismatches.
  void validate() const;
  /// Non-fatal observations, currently only n < 2m.
  std::vector<std::string> warnings() const;
};

/// max |dP_i/dz_j - w_ij| over the points; 0 when there are no primitives.
double primitive_consistency(const WeierstrassData& data, std::span<const Point> points);

/// n x m matrix of coefficient values w_ik(z).
Eigen::MatrixXcd form_matrix(const WeierstrassData& data, const Point& z);

/// Values of Omega(d_j, d_k) = sum_i w_ij(z) w_ik(z) at one point.
struct ConformalityTensor {
  Eigen::MatrixXcd entries;

  /// Largest entry modulus.
  double residual() const;
};

/// Coefficients are evaluated and summed in extended precision, then rounded.
ConformalityTensor conformality(const WeierstrassData& data, const Point& z);

struct ConformalityReport {
  bool passed = true;
  double worst_residual = 0.0;
  std::size_t worst_point = 0;
};
ConformalityReport check_conformality(const WeierstrassData& data, std::span<const Point> points,
                                      double tolerance = 1e-12);

struct ClosednessReport {
  bool passed = true;
  double worst_residual = 0.0;
  std::size_t worst_form = 0;
  std::size_t worst_point = 0;
  /// max_{j<k} |d_k w_ij - d_j w_ik| over the points, per form.
  std::vector<double> per_form;
};
ClosednessReport check_closed(const WeierstrassData& data, std::span<const Point> points,
                              double tolerance = 1e-10);

struct RankReport {
  bool passed = true;
  int worst_rank = 0;
  /// Smallest over the points of sigma_min / sigma_max.
  double worst_ratio = 0.0;
  double worst_smallest_singular_value = 0.0;
  std::size_t worst_point = 0;
};
/// Numerical rank of (w_ik(z)) with the relative cutoff sigma > tol * sigma_max.
RankReport check_rank(const WeierstrassData& data, std::span<const Point> points,
                      double relative_tolerance = 1e-9);

/// f(Q). Uses the primitives when present, otherwise integrates along the
/// straight segment from the basepoint.
std::vector<double> immerse(const WeierstrassData& data, const Point& q,
                            const QuadratureOptions& options = {});

/// f(Q) through the primitives, evaluated in long double. Throws InvalidArgument
/// when the data has no primitives.
std::vector<long double> immerse_extended(const WeierstrassData& data,
                                          std::span<const std::complex<long double>> q);

/// Re of the integral of the forms along the polygon through `vertices`, plus the constant.
/// The first vertex plays the role of the basepoint.
std::vector<double> integrate_polygon(const WeierstrassData& data, std::span<const Point> vertices,
                                      const QuadratureOptions& options = {});

}  // namespace pluri

#pragma once

#include <array>
#include <string>
#include <vector>

#include "pluriminimal/holo_expr.hpp"
#include "pluriminimal/weierstrass.hpp"

namespace pluri {

/// A holomorphic curve t -> (c_1(t), ..., c_m(t)) sampled on the square
/// [-radius, radius]^2 of the t-plane.
struct MeshSlice {
  std::vector<HoloExpr> curve;  // m expressions of arity 1
  int resolution = 32;          // samples per side, >= 2
  double radius = 1.0;
  std::array<int, 3> projection{0, 1, 2};  // 0-based components of R^n
};

/// resolution x resolution samples of the immersed curve, row-major in (Im t, Re t).
struct SurfaceGrid {
  int resolution = 0;
  double spacing = 0.0;
  std::vector<std::vector<double>> points;

  const std::vector<double>& at(int row, int col) const {
    return points[static_cast<std::size_t>(row * resolution + col)];
  }
};

/// Throws InvalidArgument on a bad slice (arity, resolution, projection).
SurfaceGrid sample_slice(const WeierstrassData& data, const MeshSlice& slice);

/// Wavefront OBJ text: "v x y z" lines then 1-based quad "f a b c d" lines.
std::string to_obj(const SurfaceGrid& grid, const std::array<int, 3>& projection);

/// Largest mean curvature norm at interior grid nodes, from grid differences in R^n.
double grid_mean_curvature(const SurfaceGrid& grid);

/// Largest normal component of the second differences; zero for planar grids.
double grid_normal_bending(const SurfaceGrid& grid);

}  // namespace pluri

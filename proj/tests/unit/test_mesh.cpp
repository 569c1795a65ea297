#include <gtest/gtest.h>

#include <sstream>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/mesh.hpp"

namespace pluri {
namespace {

WeierstrassData family_data(const char* f, const char* g) {
  return split_pairs(solve_family({parse_expr(f, 1), parse_expr(g, 1)})).data;
}

MeshSlice slice(const char* c1, const char* c2, int resolution, std::array<int, 3> projection) {
  MeshSlice s;
  s.curve = {parse_expr(c1, 1), parse_expr(c2, 1)};
  s.resolution = resolution;
  s.projection = projection;
  return s;
}

TEST(Mesh, ResolutionTwoIsOneQuad) {
  const auto grid = sample_slice(family_data("0", "0"), slice("z1", "0", 2, {2, 3, 4}));
  const std::string obj = to_obj(grid, {2, 3, 4});
  EXPECT_EQ(obj, "v -1 -1 0\nv 1 -1 0\nv -1 1 0\nv 1 1 0\nf 1 2 4 3\n");
}

TEST(Mesh, TrivialFamilySliceIsAFlatDisk) {
  const auto s = slice("z1", "0", 9, {2, 3, 4});
  const auto grid = sample_slice(family_data("0", "0"), s);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const auto& p = grid.at(r, c);
      EXPECT_NEAR(p[2], -1 + c * 0.25, 1e-15);
      EXPECT_NEAR(p[3], -1 + r * 0.25, 1e-15);
      EXPECT_EQ(p[4], 0.0);
    }
  }
  EXPECT_LT(grid_normal_bending(grid), 1e-12);
  std::istringstream obj(to_obj(grid, s.projection));
  std::string line;
  int vertices = 0, faces = 0;
  while (std::getline(obj, line)) {
    vertices += line[0] == 'v';
    faces += line[0] == 'f';
  }
  EXPECT_EQ(vertices, 81);
  EXPECT_EQ(faces, 64);
}

TEST(Mesh, FuruhataDiagonalSliceIsMinimalButNotPlanar) {
  const auto d = family_data("z1^3", "0");
  const auto coarse = sample_slice(d, slice("z1", "z1", 41, {0, 1, 2}));
  const auto fine = sample_slice(d, slice("z1", "z1", 81, {0, 1, 2}));
  // Grid differences are second order: halving the spacing divides the error by about 4.
  EXPECT_LT(grid_mean_curvature(fine), 0.3 * grid_mean_curvature(coarse));
  EXPECT_LT(grid_mean_curvature(fine), 1e-3);
  EXPECT_GT(grid_normal_bending(fine), 1e-3);
}

TEST(Mesh, InvalidSlices) {
  const auto d = family_data("0", "0");
  EXPECT_THROW(sample_slice(d, slice("z1", "0", 4, {0, 1, 6})), InvalidArgument);
  EXPECT_THROW(sample_slice(d, slice("z1", "0", 4, {0, 1, 1})), InvalidArgument);
  EXPECT_THROW(sample_slice(d, slice("z1", "0", 1, {0, 1, 2})), InvalidArgument);
  MeshSlice one;
  one.curve = {parse_expr("z1", 1)};
  EXPECT_THROW(sample_slice(d, one), InvalidArgument);
}

TEST(Mesh, OutputIsDeterministic) {
  const auto d = family_data("exp(z1)", "z1^2");
  const auto s = slice("z1^2", "1i*z1", 16, {0, 3, 5});
  EXPECT_EQ(to_obj(sample_slice(d, s), s.projection), to_obj(sample_slice(d, s), s.projection));
}

}  // namespace
}  // namespace pluri

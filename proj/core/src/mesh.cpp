#include "pluriminimal/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/geometry.hpp"

namespace pluri {
namespace {

using Vec = std::vector<long double>;

Vec lift(const std::vector<double>& v) { return Vec(v.begin(), v.end()); }

}  // namespace

SurfaceGrid sample_slice(const WeierstrassData& data, const MeshSlice& slice) {
  if (static_cast<int>(slice.curve.size()) != data.arity) {
    throw InvalidArgument("mesh: the curve needs one component per variable");
  }
  for (const auto& c : slice.curve) {
    if (c.arity() != 1) throw InvalidArgument("mesh: curve components are functions of t = z1");
  }
  if (slice.resolution < 2) throw InvalidArgument("mesh: resolution must be at least 2");
  if (!(slice.radius > 0.0)) throw InvalidArgument("mesh: radius must be positive");
  const int n = static_cast<int>(data.size());
  const auto& pr = slice.projection;
  for (int c : pr) {
    if (c < 0 || c >= n) throw InvalidArgument("mesh: projection index out of range");
  }
  if (pr[0] == pr[1] || pr[0] == pr[2] || pr[1] == pr[2]) {
    throw InvalidArgument("mesh: projection indices must be distinct");
  }

  SurfaceGrid grid;
  grid.resolution = slice.resolution;
  grid.spacing = 2.0 * slice.radius / (slice.resolution - 1);
  grid.points.reserve(static_cast<std::size_t>(slice.resolution * slice.resolution));
  Point z(static_cast<std::size_t>(data.arity));
  for (int row = 0; row < slice.resolution; ++row) {
    for (int col = 0; col < slice.resolution; ++col) {
      const Point t{Complex(-slice.radius + col * grid.spacing, -slice.radius + row * grid.spacing)};
      for (std::size_t k = 0; k < z.size(); ++k) z[k] = evaluate(slice.curve[k], t);
      grid.points.push_back(immerse(data, z));
    }
  }
  return grid;
}

std::string to_obj(const SurfaceGrid& grid, const std::array<int, 3>& projection) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& p : grid.points) {
    os << 'v';
    for (int c : projection) os << ' ' << p.at(static_cast<std::size_t>(c));
    os << '\n';
  }
  const int r = grid.resolution;
  for (int row = 0; row + 1 < r; ++row) {
    for (int col = 0; col + 1 < r; ++col) {
      const int a = row * r + col + 1;
      os << "f " << a << ' ' << a + 1 << ' ' << a + r + 1 << ' ' << a + r << '\n';
    }
  }
  return os.str();
}

double grid_mean_curvature(const SurfaceGrid& grid) {
  long double worst = 0;
  const long double h = grid.spacing;
  for (int row = 1; row + 1 < grid.resolution; ++row) {
    for (int col = 1; col + 1 < grid.resolution; ++col) {
      SurfaceMap f = [&](long double u, long double s) {
        return lift(grid.at(row + static_cast<int>(std::lround(s / h)), col + static_cast<int>(std::lround(u / h))));
      };
      worst = std::max(worst, fd_mean_curvature(f, h));
    }
  }
  return static_cast<double>(worst);
}

double grid_normal_bending(const SurfaceGrid& grid) {
  double worst = 0.0;
  const double h = grid.spacing;
  for (int row = 1; row + 1 < grid.resolution; ++row) {
    for (int col = 1; col + 1 < grid.resolution; ++col) {
      const auto& c = grid.at(row, col);
      const std::size_t n = c.size();
      Eigen::VectorXd fu(n), fs(n), fuu(n), fss(n), fus(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double e = grid.at(row, col + 1)[i], w = grid.at(row, col - 1)[i];
        const double nn = grid.at(row + 1, col)[i], ss = grid.at(row - 1, col)[i];
        const auto k = static_cast<Eigen::Index>(i);
        fu(k) = (e - w) / (2 * h);
        fs(k) = (nn - ss) / (2 * h);
        fuu(k) = (e - 2 * c[i] + w) / (h * h);
        fss(k) = (nn - 2 * c[i] + ss) / (h * h);
        fus(k) = (grid.at(row + 1, col + 1)[i] - grid.at(row - 1, col + 1)[i] - grid.at(row + 1, col - 1)[i] +
                  grid.at(row - 1, col - 1)[i]) /
                 (4 * h * h);
      }
      Eigen::MatrixXd t(n, 2);
      t << fu, fs;
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(t);
      const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), 2);
      for (const Eigen::VectorXd* v : {&fuu, &fss, &fus}) {
        worst = std::max(worst, (*v - q * (q.transpose() * *v)).norm());
      }
    }
  }
  return worst;
}

}  // namespace pluri

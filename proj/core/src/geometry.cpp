#include "pluriminimal/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "pluriminimal/errors.hpp"

namespace pluri {
namespace {

using LComplex = std::complex<long double>;

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::size_t at(int i, int k, int m) { return static_cast<std::size_t>(i * m + k); }

}  // namespace

MetricBlocks metric_blocks(const WeierstrassData& data, const Point& z) {
  const int m = data.arity;
  const int n = static_cast<int>(data.size());
  std::vector<LComplex> zl(z.begin(), z.end());
  std::vector<LComplex> w(static_cast<std::size_t>(n * m));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      w[at(i, k, m)] = evaluate<long double>(data.forms[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(k)], zl);
    }
  }
  MetricBlocks b;
  b.A.resize(m, n);
  b.B.resize(m, n);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < n; ++i) {
      b.A(k, i) = static_cast<double>(w[at(i, k, m)].real());
      b.B(k, i) = static_cast<double>(w[at(i, k, m)].imag());
    }
  }
  // Products accumulate in long double from the unrounded coefficients.
  auto gram = [&](auto left, auto right) {
    Eigen::MatrixXd g(m, m);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        long double acc = 0;
        for (int i = 0; i < n; ++i) acc += left(w[at(i, k, m)]) * right(w[at(i, l, m)]);
        g(k, l) = static_cast<double>(acc);
      }
    }
    return g;
  };
  auto re = [](const LComplex& c) { return c.real(); };
  auto im = [](const LComplex& c) { return c.imag(); };
  b.AAt = gram(re, re);
  b.ABt = gram(re, im);
  b.BAt = gram(im, re);
  b.BBt = gram(im, im);

  b.metric.resize(2 * m, 2 * m);
  b.metric.topLeftCorner(m, m) = b.AAt;
  b.metric.topRightCorner(m, m) = -b.ABt;
  b.metric.bottomLeftCorner(m, m) = -b.BAt;
  b.metric.bottomRightCorner(m, m) = b.BBt;
  return b;
}

Eigen::MatrixXd complex_structure(int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  j.bottomLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  j.topRightCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  return j;
}

Eigen::MatrixXd real_jacobian(const WeierstrassData& data, const Point& z) {
  const Eigen::MatrixXcd w = form_matrix(data, z);
  const int m = data.arity;
  Eigen::MatrixXd t(w.rows(), 2 * m);
  t.leftCols(m) = w.real();
  t.rightCols(m) = -w.imag();
  return t;
}

Eigen::VectorXd real_direction(const Point& v) {
  const auto m = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXd x(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    x(k) = v[static_cast<std::size_t>(k)].real();
    x(m + k) = v[static_cast<std::size_t>(k)].imag();
  }
  return x;
}

KahlerDiagnostics kahler_diagnostics(const MetricBlocks& blocks) {
  KahlerDiagnostics d;
  d.ab_norm = max_abs(blocks.ABt);
  d.ba_norm = max_abs(blocks.BAt);
  d.aa_minus_bb = max_abs(blocks.AAt - blocks.BBt);
  d.ab_symmetric_part = max_abs(blocks.ABt + blocks.BAt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(blocks.metric, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = eig.eigenvalues().minCoeff();
  const Eigen::MatrixXd j = complex_structure(static_cast<int>(blocks.AAt.rows()));
  d.j_invariance = max_abs(j.transpose() * blocks.metric * j - blocks.metric);
  return d;
}

Eigen::VectorXd SecondFundamentalForm::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(normal_dim);
  for (int a = 0; a < frame_dim; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < frame_dim; ++b) {
      if (y(b) == 0.0) continue;
      for (int nu = 0; nu < normal_dim; ++nu) out(nu) += x(a) * y(b) * (*this)(a, b, nu);
    }
  }
  return out;
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalisation pass.
Eigen::VectorXd orthogonalize(Eigen::VectorXd v, const std::vector<Eigen::VectorXd>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : basis) v -= e.dot(v) * e;
  }
  return v;
}

}  // namespace

SecondFundamentalFormResult second_fundamental_form(const WeierstrassData& data, const Point& z,
                                                    std::span<const Point> directions) {
  const int m = data.arity;
  const int n = static_cast<int>(data.size());
  const int frame = 2 * m;
  if (n < frame) throw GeometryError("second_fundamental_form: need n >= 2m");

  // Coefficient jets: value w_ik and derivatives d_l w_ik.
  std::vector<Jet2> jets;
  jets.reserve(static_cast<std::size_t>(n * m));
  for (const auto& form : data.forms) {
    for (const auto& c : form.coeffs) jets.push_back(eval_jet2(c, z));
  }

  Eigen::MatrixXd tangent(n, frame);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      const Complex w = jets[at(i, k, m)].value;
      tangent(i, k) = w.real();
      tangent(i, m + k) = -w.imag();
    }
  }

  std::vector<Eigen::VectorXd> basis;
  const double scale = tangent.colwise().norm().maxCoeff();
  for (int a = 0; a < frame; ++a) {
    Eigen::VectorXd v = orthogonalize(tangent.col(a), basis);
    const double norm = v.norm();
    if (!(norm > 1e-9 * scale)) {
      throw GeometryError("second_fundamental_form: tangent space is rank deficient");
    }
    basis.push_back(v / norm);
  }
  const std::size_t tangent_count = basis.size();
  while (static_cast<int>(basis.size()) < n) {
    Eigen::VectorXd best;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = orthogonalize(Eigen::VectorXd::Unit(n, i), basis);
      if (v.norm() > best_norm) {
        best_norm = v.norm();
        best = v;
      }
    }
    basis.push_back(best / best_norm);
  }

  SecondFundamentalFormResult result;
  SecondFundamentalForm& sff = result.sff;
  sff.frame_dim = frame;
  sff.normal_dim = n - frame;
  sff.tangent_basis.resize(n, frame);
  sff.normal_basis.resize(n, n - frame);
  for (int a = 0; a < frame; ++a) sff.tangent_basis.col(a) = basis[static_cast<std::size_t>(a)];
  for (int nu = 0; nu < n - frame; ++nu) sff.normal_basis.col(nu) = basis[tangent_count + static_cast<std::size_t>(nu)];

  // Real Hessian of Re P_i from the complex Hessian C_kl = d_l w_ik.
  sff.values.assign(static_cast<std::size_t>(frame * frame * sff.normal_dim), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        const Complex c = 0.5 * (jets[at(i, k, m)].grad[static_cast<std::size_t>(l)] +
                                 jets[at(i, l, m)].grad[static_cast<std::size_t>(k)]);
        const double hxx = c.real(), hxy = -c.imag(), hyy = -c.real();
        for (int nu = 0; nu < sff.normal_dim; ++nu) {
          const double nrm = sff.normal_basis(i, nu);
          auto add = [&](int a, int b, double h) {
            sff.values[static_cast<std::size_t>((a * frame + b) * sff.normal_dim + nu)] += nrm * h;
          };
          add(k, l, hxx);
          add(k, m + l, hxy);
          add(m + k, l, hxy);
          add(m + k, m + l, hyy);
        }
      }
    }
  }

  const Eigen::MatrixXd j = complex_structure(m);
  for (int a = 0; a < frame; ++a) {
    for (int b = 0; b < frame; ++b) {
      const Eigen::VectorXd ea = Eigen::VectorXd::Unit(frame, a);
      const Eigen::VectorXd eb = Eigen::VectorXd::Unit(frame, b);
      const double r = (sff.apply(ea, j * eb) - sff.apply(j * ea, eb)).norm();
      result.circularity_residual = std::max(result.circularity_residual, r);
    }
  }

  for (const auto& v : directions) {
    if (static_cast<int>(v.size()) != m) throw InvalidArgument("second_fundamental_form: bad direction");
    Eigen::VectorXd x = real_direction(v);
    const double length = (tangent * x).norm();
    if (!(length > 0.0)) throw GeometryError("second_fundamental_form: direction maps to zero");
    x /= length;
    const Eigen::VectorXd jx = j * x;
    result.mean_curvature_norms.push_back((sff.apply(x, x) + sff.apply(jx, jx)).norm());
  }
  return result;
}

long double fd_mean_curvature(const SurfaceMap& f, long double h) {
  const auto f0 = f(0, 0);
  const auto fp0 = f(h, 0), fm0 = f(-h, 0), f0p = f(0, h), f0m = f(0, -h);
  const auto fpp = f(h, h), fpm = f(h, -h), fmp = f(-h, h), fmm = f(-h, -h);
  const std::size_t n = f0.size();
  using V = std::vector<long double>;
  V fu(n), fs(n), fuu(n), fss(n), fus(n);
  for (std::size_t i = 0; i < n; ++i) {
    fu[i] = (fp0[i] - fm0[i]) / (2 * h);
    fs[i] = (f0p[i] - f0m[i]) / (2 * h);
    fuu[i] = (fp0[i] - 2 * f0[i] + fm0[i]) / (h * h);
    fss[i] = (f0p[i] - 2 * f0[i] + f0m[i]) / (h * h);
    fus[i] = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4 * h * h);
  }
  auto dot = [n](const V& a, const V& b) {
    long double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  const long double e = dot(fu, fu), ff = dot(fu, fs), g = dot(fs, fs);
  const long double det = e * g - ff * ff;
  if (!(det > 0)) throw GeometryError("fd_mean_curvature: degenerate parametrisation");

  V e1 = fu, e2 = fs;
  const long double n1 = std::sqrt(e);
  for (auto& x : e1) x /= n1;
  const long double p = dot(e2, e1);
  for (std::size_t i = 0; i < n; ++i) e2[i] -= p * e1[i];
  const long double n2 = std::sqrt(dot(e2, e2));
  for (auto& x : e2) x /= n2;
  auto normal = [&](V w) {
    const long double a = dot(w, e1), b = dot(w, e2);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * e1[i] + b * e2[i];
    return w;
  };
  const V nuu = normal(fuu), nus = normal(fus), nss = normal(fss);
  long double h2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double hi = (g * nuu[i] - 2 * ff * nus[i] + e * nss[i]) / (2 * det);
    h2 += hi * hi;
  }
  return std::sqrt(h2);
}

double fd_line_mean_curvature(const WeierstrassData& data, const Point& z, const Point& v, double h) {
  const std::size_t m = z.size();
  std::vector<std::complex<long double>> q(m);
  SurfaceMap f = [&](long double u, long double s) {
    const std::complex<long double> t(u, s);
    for (std::size_t j = 0; j < m; ++j) {
      q[j] = std::complex<long double>(z[j].real(), z[j].imag()) +
             t * std::complex<long double>(v[j].real(), v[j].imag());
    }
    return immerse_extended(data, q);
  };
  return static_cast<double>(fd_mean_curvature(f, h));
}

GeometryReport geometry_report(const WeierstrassData& data, const Point& z,
                               std::span<const Point> directions, double rank_tolerance) {
  GeometryReport r;
  r.point = z;
  r.conformality_residual = conformality(data, z).residual();
  const Point pts[] = {z};
  const RankReport rank = check_rank(data, pts, rank_tolerance);
  r.jacobian_rank = rank.worst_rank;
  r.smallest_singular_value = rank.worst_smallest_singular_value;
  r.blocks = metric_blocks(data, z);
  if (rank.passed && static_cast<int>(data.size()) >= 2 * data.arity) {
    auto sff = second_fundamental_form(data, z, directions);
    r.sff = std::move(sff.sff);
    r.mean_curvature_norms = std::move(sff.mean_curvature_norms);
    r.circularity_residual = sff.circularity_residual;
  }
  return r;
}

}  // namespace pluri

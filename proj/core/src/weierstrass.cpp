#include "pluriminimal/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "pluriminimal/errors.hpp"

namespace pluri {

OneForm exterior_derivative(const HoloExpr& primitive) {
  OneForm form;
  for (int j = 0; j < primitive.arity(); ++j) form.coeffs.push_back(differentiate(primitive, j));
  return form;
}

WeierstrassData WeierstrassData::from_primitives(std::vector<HoloExpr> primitives, Point basepoint,
                                                 std::vector<double> constant) {
  if (primitives.empty()) throw InvalidArgument("WeierstrassData: no primitives");
  WeierstrassData data;
  data.arity = primitives.front().arity();
  for (const auto& p : primitives) data.forms.push_back(exterior_derivative(p));
  data.basepoint = basepoint.empty() ? Point(static_cast<std::size_t>(data.arity)) : std::move(basepoint);
  data.constant = constant.empty() ? std::vector<double>(primitives.size(), 0.0) : std::move(constant);
  data.primitives = std::move(primitives);
  data.validate();
  return data;
}

void WeierstrassData::validate() const {
  if (arity < 1) throw InvalidArgument("WeierstrassData: arity must be >= 1");
  if (forms.empty()) throw InvalidArgument("WeierstrassData: no forms");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].arity() != arity) {
      throw InvalidArgument("WeierstrassData: form " + std::to_string(i + 1) + " has " +
                            std::to_string(forms[i].arity()) + " coefficients, expected " +
                            std::to_string(arity));
    }
    for (const auto& c : forms[i].coeffs) {
      if (c.arity() != arity) throw InvalidArgument("WeierstrassData: coefficient arity mismatch");
    }
  }
  if (primitives) {
    if (primitives->size() != forms.size()) {
      throw InvalidArgument("WeierstrassData: primitives and forms differ in number");
    }
    for (const auto& p : *primitives) {
      if (p.arity() != arity) throw InvalidArgument("WeierstrassData: primitive arity mismatch");
    }
  }
  if (static_cast<int>(basepoint.size()) != arity) {
    throw InvalidArgument("WeierstrassData: basepoint has wrong dimension");
  }
  if (constant.size() != forms.size()) {
    throw InvalidArgument("WeierstrassData: constant has wrong length");
  }
}

std::vector<std::string> WeierstrassData::warnings() const {
  std::vector<std::string> out;
  if (static_cast<int>(forms.size()) < 2 * arity) {
    out.push_back("n = " + std::to_string(forms.size()) + " < 2m = " + std::to_string(2 * arity) +
                  ": the immersion cannot be totally real");
  }
  return out;
}

double primitive_consistency(const WeierstrassData& data, std::span<const Point> points) {
  if (!data.primitives) return 0.0;
  double worst = 0.0;
  for (const auto& z : points) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Jet2 p = eval_jet2((*data.primitives)[i], z);
      for (int j = 0; j < data.arity; ++j) {
        const Complex w = evaluate(data.forms[i].coeffs[static_cast<std::size_t>(j)], z);
        worst = std::max(worst, std::abs(p.grad[static_cast<std::size_t>(j)] - w));
      }
    }
  }
  return worst;
}

Eigen::MatrixXcd form_matrix(const WeierstrassData& data, const Point& z) {
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXcd w(n, data.arity);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < data.arity; ++k) {
      w(i, k) = evaluate(data.forms[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(k)], z);
    }
  }
  return w;
}

double ConformalityTensor::residual() const {
  return entries.size() == 0 ? 0.0 : entries.cwiseAbs().maxCoeff();
}

ConformalityTensor conformality(const WeierstrassData& data, const Point& z) {
  using CL = std::complex<long double>;
  const int m = data.arity;
  std::vector<CL> zl(z.begin(), z.end());
  std::vector<CL> values(data.size() * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (int k = 0; k < m; ++k) {
      values[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)] =
          evaluate<long double>(data.forms[i].coeffs[static_cast<std::size_t>(k)], zl);
    }
  }
  ConformalityTensor t;
  t.entries.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = j; k < m; ++k) {
      CL acc = 0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        acc += values[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] *
               values[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)];
      }
      const Complex v(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      t.entries(j, k) = v;
      t.entries(k, j) = v;
    }
  }
  return t;
}

ConformalityReport check_conformality(const WeierstrassData& data, std::span<const Point> points,
                                      double tolerance) {
  ConformalityReport report;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = conformality(data, points[p]).residual();
    if (p == 0 || r > report.worst_residual) {
      report.worst_residual = r;
      report.worst_point = p;
    }
  }
  report.passed = report.worst_residual < tolerance;
  return report;
}

ClosednessReport check_closed(const WeierstrassData& data, std::span<const Point> points,
                              double tolerance) {
  if (points.empty()) throw InvalidArgument("check_closed: need at least one sample point");
  ClosednessReport report;
  report.per_form.assign(data.size(), 0.0);
  const int m = data.arity;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::vector<Jet2> jets;
      for (const auto& c : data.forms[i].coeffs) jets.push_back(eval_jet2(c, points[p]));
      for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          // d w_ij / dz_k - d w_ik / dz_j
          const double r = std::abs(jets[static_cast<std::size_t>(j)].grad[static_cast<std::size_t>(k)] -
                                    jets[static_cast<std::size_t>(k)].grad[static_cast<std::size_t>(j)]);
          report.per_form[i] = std::max(report.per_form[i], r);
          if (r > report.worst_residual) {
            report.worst_residual = r;
            report.worst_form = i;
            report.worst_point = p;
          }
        }
      }
    }
  }
  report.passed = report.worst_residual < tolerance;
  return report;
}

RankReport check_rank(const WeierstrassData& data, std::span<const Point> points,
                      double relative_tolerance) {
  if (static_cast<int>(data.size()) < data.arity) {
    throw InvalidArgument("check_rank: fewer forms than variables");
  }
  RankReport report;
  report.worst_rank = data.arity;
  report.worst_ratio = 1.0;
  bool first = true;
  for (std::size_t p = 0; p < points.size(); ++p) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(form_matrix(data, points[p]));
    const auto& s = svd.singularValues();
    const double largest = s.size() ? s(0) : 0.0;
    const double smallest = s.size() ? s(s.size() - 1) : 0.0;
    int rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (largest > 0.0 && s(k) > relative_tolerance * largest) ++rank;
    }
    const double ratio = largest > 0.0 ? smallest / largest : 0.0;
    if (first || rank < report.worst_rank || (rank == report.worst_rank && ratio < report.worst_ratio)) {
      report.worst_rank = rank;
      report.worst_ratio = ratio;
      report.worst_smallest_singular_value = smallest;
      report.worst_point = p;
      first = false;
    }
  }
  report.passed = report.worst_rank == data.arity;
  return report;
}

std::vector<double> integrate_polygon(const WeierstrassData& data, std::span<const Point> vertices,
                                      const QuadratureOptions& options) {
  if (vertices.size() < 1) throw InvalidArgument("integrate_polygon: no vertices");
  const int m = data.arity;
  std::vector<Complex> total(data.size());
  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    const Point& a = vertices[s];
    const Point& b = vertices[s + 1];
    Point delta(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) delta[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(j)];
    Point z(static_cast<std::size_t>(m));
    auto integrand = [&](double t, std::vector<Complex>& out) {
      for (int j = 0; j < m; ++j) z[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] + t * delta[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < data.size(); ++i) {
        Complex acc = 0.0;
        for (int j = 0; j < m; ++j) {
          acc += evaluate(data.forms[i].coeffs[static_cast<std::size_t>(j)], z) * delta[static_cast<std::size_t>(j)];
        }
        out[i] = acc;
      }
    };
    const auto piece = integrate_unit_interval(integrand, data.size(), options);
    for (std::size_t i = 0; i < data.size(); ++i) total[i] += piece[i];
  }
  std::vector<double> f(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) f[i] = total[i].real() + data.constant[i];
  return f;
}

std::vector<double> immerse(const WeierstrassData& data, const Point& q, const QuadratureOptions& options) {
  if (static_cast<int>(q.size()) != data.arity) throw InvalidArgument("immerse: point has wrong dimension");
  if (data.primitives) {
    std::vector<double> f(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& p = (*data.primitives)[i];
      f[i] = (evaluate(p, q) - evaluate(p, data.basepoint)).real() + data.constant[i];
    }
    return f;
  }
  const Point path[] = {data.basepoint, q};
  return integrate_polygon(data, path, options);
}

std::vector<long double> immerse_extended(const WeierstrassData& data,
                                          std::span<const std::complex<long double>> q) {
  if (!data.primitives) throw InvalidArgument("immerse_extended: data has no primitives");
  if (static_cast<int>(q.size()) != data.arity) {
    throw InvalidArgument("immerse_extended: point has wrong dimension");
  }
  std::vector<std::complex<long double>> base(data.basepoint.begin(), data.basepoint.end());
  std::vector<long double> f(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& p = (*data.primitives)[i];
    f[i] = (evaluate<long double>(p, q) - evaluate<long double>(p, base)).real() + data.constant[i];
  }
  return f;
}

}  // namespace pluri

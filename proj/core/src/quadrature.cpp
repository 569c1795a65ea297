#include "pluriminimal/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pluriminimal/errors.hpp"

namespace pluri {

std::vector<std::pair<double, double>> gauss_legendre_rule(int n) {
  std::vector<std::pair<double, double>> rule(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {-x, w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  return rule;
}

namespace {

constexpr int kOrder = 10;

struct Integrator {
  const VectorIntegrand& f;
  std::size_t dim;
  QuadratureOptions options;
  std::vector<std::pair<double, double>> rule = gauss_legendre_rule(kOrder);
  std::vector<Complex> scratch;

  std::vector<Complex> panel(double a, double b) {
    std::vector<Complex> acc(dim);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (const auto& [x, w] : rule) {
      f(mid + half * x, scratch);
      for (std::size_t i = 0; i < dim; ++i) acc[i] += (w * half) * scratch[i];
    }
    return acc;
  }

  void refine(double a, double b, const std::vector<Complex>& whole, int depth,
              std::vector<Complex>& out) {
    const double mid = 0.5 * (a + b);
    std::vector<Complex> left = panel(a, mid);
    std::vector<Complex> right = panel(mid, b);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      diff = std::max(diff, std::abs(left[i] + right[i] - whole[i]));
      scale = std::max(scale, std::abs(left[i] + right[i]));
    }
    const double tol = std::max(options.abs_tol * (b - a),
                                16.0 * std::numeric_limits<double>::epsilon() * scale);
    if (diff <= tol) {
      for (std::size_t i = 0; i < dim; ++i) out[i] += left[i] + right[i];
      return;
    }
    if (depth >= options.max_depth) {
      throw QuadratureError("adaptive Gauss-Legendre did not converge (difference " +
                            std::to_string(diff) + ")");
    }
    refine(a, mid, left, depth + 1, out);
    refine(mid, b, right, depth + 1, out);
  }
};

}  // namespace

std::vector<Complex> integrate_unit_interval(const VectorIntegrand& f, std::size_t dim,
                                             const QuadratureOptions& options) {
  Integrator integrator{f, dim, options, gauss_legendre_rule(kOrder), std::vector<Complex>(dim)};
  std::vector<Complex> out(dim);
  integrator.refine(0.0, 1.0, integrator.panel(0.0, 1.0), 0, out);
  return out;
}

}  // namespace pluri

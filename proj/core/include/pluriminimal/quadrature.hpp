#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pluriminimal/jet.hpp"

namespace pluri {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 40;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre_rule(int n);

/// Adaptive Gauss-Legendre integration over [0, 1] of a vector valued complex
/// integrand. A panel is accepted when the 10-point estimate and the sum over
/// its two halves agree to abs_tol (floored at a few ulps of the estimate).
/// Throws QuadratureError once max_depth bisections fail to converge.
using VectorIntegrand = std::function<void(double t, std::vector<Complex>& out)>;
std::vector<Complex> integrate_unit_interval(const VectorIntegrand& f, std::size_t dim,
                                             const QuadratureOptions& options = {});

}  // namespace pluri

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "pluriminimal/holo_expr.hpp"
#include "pluriminimal/jet.hpp"

namespace pluri::testing {

using LComplex = std::complex<long double>;

inline std::vector<LComplex> extend(const Point& z) { return {z.begin(), z.end()}; }

inline LComplex eval_ld(const HoloExpr& e, const std::vector<LComplex>& z) {
  return evaluate<long double>(e, std::span<const LComplex>(z));
}

inline Point random_point(std::mt19937_64& rng, int m, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  Point z(static_cast<std::size_t>(m));
  for (auto& c : z) c = {u(rng), u(rng)};
  return z;
}

/// Random entire expression with moderate magnitude on the unit polydisk.
inline HoloExpr random_expression(std::mt19937_64& rng, int m, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> var(0, m - 1);
  const int kind = pick(rng);
  if (kind == 0) return HoloExpr::variable(m, var(rng));
  if (kind == 1) {
    const int re = small(rng);
    const int im = small(rng);
    return HoloExpr::constant(m, ComplexRational(mpq_class(re, 2), mpq_class(im, 4)));
  }
  const HoloExpr a = random_expression(rng, m, depth - 1);
  switch (kind) {
    case 2: {
      const HoloExpr b = random_expression(rng, m, depth - 1);
      return a + b;
    }
    case 3: {
      const HoloExpr b = random_expression(rng, m, depth - 1);
      return a * b;
    }
    case 4:
      return HoloExpr::power(a, std::uniform_int_distribution<int>(2, 3)(rng));
    case 5:
      return exp(a);
    case 6:
      return sin(a);
    default: {
      const HoloExpr b = random_expression(rng, m, depth - 1);
      return cos(a) - b;
    }
  }
}

/// Polynomial in z1 of degree <= d with exact dyadic coefficients decaying like 2^-k.
inline HoloExpr random_polynomial(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<HoloExpr> terms{HoloExpr(1)};
  for (int k = 1; k <= d; ++k) {
    const mpz_class den = mpz_class(1) << static_cast<mp_bitcnt_t>(k);
    const int re = c(rng);
    const int im = c(rng);
    const ComplexRational coeff(mpq_class(mpz_class(re), den), mpq_class(mpz_class(im), den));
    terms.push_back(HoloExpr::constant(1, coeff) * HoloExpr::power(HoloExpr::variable(1, 0), k));
  }
  return HoloExpr::sum(std::move(terms));
}

}  // namespace pluri::testing

#include "pluriminimal/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/jet.hpp"
#include "pluriminimal/polynomial.hpp"
#include "pluriminimal/sampling.hpp"

namespace pluri {
namespace {

std::array<Jet2, 6> jets_at(const SixFunctions& six, const Point& z) {
  std::array<Jet2, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = eval_jet2(six.p[i], z);
  return out;
}

// Symmetric product dA.dB as entries (11, 12, 22), off-diagonal symmetrised.
std::array<Complex, 3> sym_product(const Jet2& a, const Jet2& b) {
  return {a.grad[0] * b.grad[0], 0.5 * (a.grad[0] * b.grad[1] + a.grad[1] * b.grad[0]),
          a.grad[1] * b.grad[1]};
}

}  // namespace

SixFunctions solve_family(const FamilyInput& input) {
  if (input.f.arity() != 1 || input.g.arity() != 1) {
    throw InvalidArgument("solve_family: f and g must be functions of one variable");
  }
  const HoloExpr z1 = HoloExpr::variable(2, 0);
  const HoloExpr z2 = HoloExpr::variable(2, 1);
  const HoloExpr g_z1 = with_arity(input.g, 2);
  const HoloExpr args[] = {z2};
  const HoloExpr f_z2 = substitute(input.f, args);
  const HoloExpr half = HoloExpr::constant(2, ComplexRational(mpq_class(1, 2)));
  const HoloExpr s = half * (differentiate(g_z1, 0) + differentiate(f_z2, 1));

  SixFunctions six;
  six.p[0] = z1 * z2;
  six.p[1] = -s;
  six.p[2] = z1;
  six.p[3] = f_z2 - z2 * s;
  six.p[4] = z2;
  six.p[5] = g_z1 - z1 * s;
  for (auto& p : six.p) p = expand_if_polynomial(p);
  return six;
}

double system_residual(const SixFunctions& six, std::span<const Point> points) {
  double worst = 0.0;
  for (const auto& z : points) {
    const auto j = jets_at(six, z);
    const Complex p2_1 = j[1].grad[0], p2_2 = j[1].grad[1];
    const Complex e1 = z[1] * p2_1 - j[3].grad[0];
    const Complex e2 = z[0] * p2_2 - j[5].grad[1];
    const Complex e3 = z[1] * p2_2 + z[0] * p2_1 - j[3].grad[1] - j[5].grad[0];
    worst = std::max({worst, std::abs(e1), std::abs(e2), std::abs(e3)});
  }
  return worst;
}

double relation_residual(const SixFunctions& six, std::span<const Point> points) {
  double worst = 0.0;
  for (const auto& z : points) {
    const auto j = jets_at(six, z);
    const auto l = sym_product(j[0], j[1]);
    const auto r1 = sym_product(j[2], j[3]);
    const auto r2 = sym_product(j[4], j[5]);
    double scale = 1.0;
    double diff = 0.0;
    for (std::size_t e = 0; e < 3; ++e) {
      scale = std::max({scale, std::abs(l[e]), std::abs(r1[e]), std::abs(r2[e])});
      diff = std::max(diff, std::abs(l[e] - r1[e] - r2[e]));
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

WeierstrassData pairs_to_data(std::span<const IsotropicPair> pairs) {
  if (pairs.empty()) throw InvalidArgument("pairs_to_data: no pairs");
  const int m = pairs.front().first.arity();
  const HoloExpr minus_i = HoloExpr::constant(m, ComplexRational(0, -1));
  std::vector<HoloExpr> primitives;
  for (const auto& pair : pairs) {
    if (pair.first.arity() != m || pair.second.arity() != m) {
      throw InvalidArgument("pairs_to_data: arity mismatch");
    }
    primitives.push_back(expand_if_polynomial(pair.first + pair.second));
    primitives.push_back(expand_if_polynomial(minus_i * (pair.first - pair.second)));
  }
  return WeierstrassData::from_primitives(std::move(primitives));
}

RejectedRelation::RejectedRelation(double residual)
    : std::runtime_error("relation residual " + std::to_string(residual) + " exceeds tolerance"),
      residual_(residual) {}

std::vector<IsotropicPair> canonical_pairs(const SixFunctions& six) {
  return {{six.p[0], -six.p[1]}, {six.p[2], six.p[3]}, {six.p[4], six.p[5]}};
}

IsotropicPairs split_pairs(const SixFunctions& six, const SplitOptions& options) {
  const auto points = polydisk_samples(2, options.radius, options.samples, options.seed);
  const double residual = relation_residual(six, points);
  if (!(residual <= options.tolerance)) throw RejectedRelation(residual);
  IsotropicPairs out;
  out.pairs = canonical_pairs(six);
  out.data = pairs_to_data(out.pairs);
  return out;
}

}  // namespace pluri

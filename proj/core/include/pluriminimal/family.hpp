/**
 * @file family.hpp
 * @brief The explicit C^2 -> R^6 families built from a pair of entire
 *        functions f, g of one variable.
 *
 * With P1 = z1 z2, P3 = z1, P5 = z2 the quadratic relation
 *     dP1.dP2 = dP3.dP4 + dP5.dP6
 * is solved by
 *     P2 = -(g'(z1) + f'(z2)) / 2
 *     P4 = f(z2) - z2 (g'(z1) + f'(z2)) / 2
 *     P6 = g(z1) - z1 (g'(z1) + f'(z2)) / 2.
 * The relation is turned into isotropic data through pairs (Q1, Q2) realised as
 * (Re(Q1 + Q2), Im(Q1 - Q2)), each contributing 4 dQ1.dQ2 to the conformality
 * tensor. The pairs are (P1, -P2), (P3, P4), (P5, P6).
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pluriminimal/holo_expr.hpp"
#include "pluriminimal/weierstrass.hpp"

namespace pluri {

/// f and g are expressions in one variable (z1).
struct FamilyInput {
  HoloExpr f{1};
  HoloExpr g{1};
};

/// P1..P6 stored 0-based: p[0] = P1, ..., p[5] = P6. Arity 2.
struct SixFunctions {
  std::array<HoloExpr, 6> p{HoloExpr(2), HoloExpr(2), HoloExpr(2),
                            HoloExpr(2), HoloExpr(2), HoloExpr(2)};
};

/// Throws InvalidArgument unless f and g have arity 1.
SixFunctions solve_family(const FamilyInput& input);

/// Largest residual of the three first-order equations
///   z2 (P2)_1 = (P4)_1,  z1 (P2)_2 = (P6)_2,  z2 (P2)_2 + z1 (P2)_1 = (P4)_2 + (P6)_1.
double system_residual(const SixFunctions& six, std::span<const Point> points);

/// Largest entry of dP1.dP2 - dP3.dP4 - dP5.dP6 over the points, divided by
/// max(1, largest entry of the three products).
double relation_residual(const SixFunctions& six, std::span<const Point> points);

struct IsotropicPair {
  HoloExpr first;
  HoloExpr second;
};

/// Data with components Re(Q1 + Q2), Im(Q1 - Q2) per pair, in order.
WeierstrassData pairs_to_data(std::span<const IsotropicPair> pairs);

struct IsotropicPairs {
  std::vector<IsotropicPair> pairs;
  WeierstrassData data;
};

class RejectedRelation : public std::runtime_error {
 public:
  explicit RejectedRelation(double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct SplitOptions {
  double tolerance = 1e-10;
  std::size_t samples = 100;
  double radius = 2.0;
  std::uint64_t seed = 20240607;
};

/// canonical_pairs(six) and the resulting data.
/// Throws RejectedRelation when the relation residual exceeds the tolerance.
IsotropicPairs split_pairs(const SixFunctions& six, const SplitOptions& options = {});

/// (P1, -P2), (P3, P4), (P5, P6).
std::vector<IsotropicPair> canonical_pairs(const SixFunctions& six);

}  // namespace pluri

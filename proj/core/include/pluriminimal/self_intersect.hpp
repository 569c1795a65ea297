#pragma once

#include <cstdint>
#include <optional>

#include "pluriminimal/weierstrass.hpp"

namespace pluri {

struct SelfIntersectOptions {
  int starts = 64;
  double radius = 3.0;          // starts are drawn from this polydisk
  double min_separation = 0.1;  // |p - q| >= delta
  double certify_tolerance = 1e-8;
  int max_iterations = 400;
  double initial_penalty = 1.0;
  int max_penalty_doublings = 30;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SelfIntersection {
  Point p;
  Point q;
  double distance = 0.0;    // |f(p) - f(q)|, re-evaluated in long double
  double separation = 0.0;  // |p - q|
  int start = 0;
};

struct SelfIntersectResult {
  std::optional<SelfIntersection> witness;
  /// Smallest image distance among starts that respect the separation.
  double best_distance = 0.0;
  int starts_run = 0;
};

/// Multistart Levenberg-Marquardt on |f(p) - f(q)|^2 with a doubling penalty on
/// max(0, delta - |p - q|). Jacobians come from the form coefficients. A pair is
/// returned only when its long double re-evaluation is below the tolerance and
/// the separation constraint holds. Throws InvalidArgument without primitives.
SelfIntersectResult self_intersect(const WeierstrassData& data,
                                   const SelfIntersectOptions& options = {});

}  // namespace pluri

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pluriminimal/jet.hpp"

namespace pluri {

/// Seeded source of sample points. The output sequence depends only on the
/// seed (mt19937_64 is fully specified), never on the standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {lo, ..., hi}.
  long integer(long lo, long hi);

  /// Uniform in the closed disk of the given radius.
  Complex in_disk(double radius);
  /// Each coordinate uniform in its disk.
  Point in_polydisk(int m, double radius);
  /// Uniform on the unit sphere of C^m.
  Point unit_direction(int m);

 private:
  std::mt19937_64 engine_;
};

/// `count` points in the polydisk, from a fresh sampler seeded with `seed`.
std::vector<Point> polydisk_samples(int m, double radius, std::size_t count, std::uint64_t seed);

}  // namespace pluri

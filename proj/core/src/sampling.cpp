#include "pluriminimal/sampling.hpp"

#include <cmath>
#include <numbers>

namespace pluri {

long Sampler::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

Complex Sampler::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

Point Sampler::in_polydisk(int m, double radius) {
  Point z(static_cast<std::size_t>(m));
  for (auto& c : z) c = in_disk(radius);
  return z;
}

Point Sampler::unit_direction(int m) {
  // Box-Muller normals, normalised.
  Point v(static_cast<std::size_t>(m));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : v) {
      const double u1 = 1.0 - uniform();
      const double u2 = uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      c = {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
      norm2 += std::norm(c);
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return v;
}

std::vector<Point> polydisk_samples(int m, double radius, std::size_t count, std::uint64_t seed) {
  Sampler sampler(seed);
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back(sampler.in_polydisk(m, radius));
  return points;
}

}  // namespace pluri

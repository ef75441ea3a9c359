#include "coderiv/sampling.hpp"

#include <numbers>

namespace coderiv {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u = 1.0 - uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::vector<VecX> sphere_directions(int dim, int count, std::uint64_t seed) {
  if (count <= 0) throw ConfigError("direction count must be positive");
  Rng rng(seed);
  std::vector<VecX> out;
  out.reserve(static_cast<std::size_t>(count));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (dim == 2) {
    const double offset = rng.uniform();
    for (int k = 0; k < count; ++k) {
      const double angle = two_pi * (k + offset) / count;
      VecX d(2);
      d << std::cos(angle), std::sin(angle);
      out.push_back(d);
    }
    return out;
  }
  if (dim == 4) {
    // R3 sequence (generalized golden ratio) for (u, a, b) in [0,1)^3;
    // (sqrt(u) e^{2 pi i a}, sqrt(1-u) e^{2 pi i b}) is uniform on S^3.
    constexpr double phi3 = 1.2207440846057596;
    const double step[3] = {1.0 / phi3, 1.0 / (phi3 * phi3), 1.0 / (phi3 * phi3 * phi3)};
    double t[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    for (int k = 0; k < count; ++k) {
      const double u = t[0];
      const double r1 = std::sqrt(u);
      const double r2 = std::sqrt(1.0 - u);
      VecX d(4);
      d << r1 * std::cos(two_pi * t[1]), r1 * std::sin(two_pi * t[1]), r2 * std::cos(two_pi * t[2]),
          r2 * std::sin(two_pi * t[2]);
      out.push_back(d / d.norm());
      for (int c = 0; c < 3; ++c) {
        t[c] += step[c];
        t[c] -= std::floor(t[c]);
      }
    }
    return out;
  }
  throw ConfigError("sphere_directions supports dimensions 2 and 4");
}

VecX random_unit_vector(int dim, Rng& rng) {
  VecX v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  } while (v.norm() == 0.0);
  return v / v.norm();
}

VecX random_in_ball(const VecX& center, double radius, Rng& rng) {
  const int dim = static_cast<int>(center.size());
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  return center + r * random_unit_vector(dim, rng);
}

VecX random_in_shell(int dim, double r_min, double r_max, Rng& rng) {
  const double lo = std::pow(r_min, dim);
  const double hi = std::pow(r_max, dim);
  const double r = std::pow(lo + (hi - lo) * rng.uniform(), 1.0 / dim);
  return r * random_unit_vector(dim, rng);
}

}  // namespace coderiv

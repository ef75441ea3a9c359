#pragma once

#include "coderiv/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace coderiv {

/// Mixes a master seed with stream indices (radius index, direction index,
/// sample index, ...) so independent tasks can draw reproducible samples.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Platform-stable random source. Uniform and normal variates are derived
/// from raw engine output, so sequences do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Deterministic low-discrepancy directions on the unit sphere S^{dim-1}
/// (dim 2 or 4). On the circle: `count` equally spaced angles with a seeded
/// rotation. On S^3: a Kronecker lattice in Hopf coordinates with a seeded
/// offset, which is equidistributed for the uniform measure.
std::vector<VecX> sphere_directions(int dim, int count, std::uint64_t seed);

/// One uniformly distributed point of the unit sphere S^{dim-1}.
VecX random_unit_vector(int dim, Rng& rng);

/// Uniform point of the shell r_min <= |x| <= r_max in R^dim.
VecX random_in_shell(int dim, double r_min, double r_max, Rng& rng);

/// Uniform point in the closed ball of the given radius around center.
VecX random_in_ball(const VecX& center, double radius, Rng& rng);

}  // namespace coderiv

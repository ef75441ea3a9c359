#pragma once

#include "coderiv/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coderiv {

/// Smallest singular value. Closed form for 2x2, Jacobi SVD otherwise.
double sigma_min(const Mat2& m);
double sigma_min(const Mat4& m);
/// Square 2x2 or 4x4 only; ConfigError otherwise.
double sigma_min(const MatX& m);

enum class CoveringMethod { kSpectral, kDefinitional };

std::string_view to_string(CoveringMethod method);
/// "spectral" or "definitional".
CoveringMethod parse_covering_method(std::string_view text);

/// Which unit dual vectors y take part in the inf at a point z.
struct YConstraint {
  enum class Kind { kFullSphere, kAdmissibleSubspace, kEqualityLocus };

  Kind kind = Kind::kFullSphere;
  /// For kAdmissibleSubspace: blocks (coordinates 1-2, 3-4) where y may be nonzero.
  std::array<bool, 2> block_mask{true, true};

  static YConstraint full_sphere() { return {}; }
  static YConstraint admissible(std::array<bool, 2> mask) { return {Kind::kAdmissibleSubspace, mask}; }
  static YConstraint equality_locus() { return {Kind::kEqualityLocus, {true, true}}; }
};

std::string_view to_string(YConstraint::Kind kind);

/// The dual vectors for which the coderivative of `map` at z is nonempty.
/// nullopt when only y = 0 qualifies (the origin for f and g). For g with
/// one zero block the admissible y vanish over that block.
std::optional<YConstraint> admissible_y(MapId map, const VecX& z);

/// The linear operator y -> coderivative action, restricted to the
/// admissible coordinates of y. Square, 2x2 or 4x4. nullopt where the
/// coderivative is empty for every unit y.
std::optional<MatX> restricted_action(MapId map, const VecX& z);

/// inf over admissible unit y of |coderivative action| at a single point.
/// kEqualityLocus evaluates the action at `equality_locus_y` (f and g only).
double pointwise_inf(MapId map, const VecX& z, const YConstraint& constraint);

struct CoveringEstimate {
  VecX center;
  VecX image;
  std::vector<double> etas;
  /// inf over all accepted points in balls of radius <= eta; non-increasing
  /// in eta.
  std::vector<double> inf_per_eta;
  double estimate = 0.0;
  CoveringMethod method = CoveringMethod::kSpectral;
  /// Accepted z points per eta (points with nonempty coderivative and
  /// map(z) within eta of the image).
  std::vector<int> z_used;
  int y_samples = 0;
};

/// Sup-inf covering constant estimate over a decreasing eta ladder. Each ball
/// B(zbar, eta) is probed at the center, the 2n axis boundary points and
/// uniform interior points, keeping those whose image lies in
/// B(map(zbar), eta). The inner inf uses sigma_min of `restricted_action`
/// (kSpectral) or a minimum over `y_samples` sphere directions
/// (kDefinitional), which over-estimates by the sampling gap.
CoveringEstimate covering_estimate(MapId map, const VecX& zbar, const std::vector<double>& etas,
                                   int y_samples, int z_samples, CoveringMethod method,
                                   std::uint64_t seed = 0);

/// 1e-1, 1e-2, ..., 1e-6.
std::vector<double> default_etas();

/// Closed-form upper bounds for the covering constant of h; the smallest
/// applicable one, or nullopt when z has no zero coordinate and unequal
/// magnitudes. Throws DomainError at the origin.
///   z_i = 0, i in {1, 2}:  2 |z_{3-i}|^3 / |z|^3
///   z_i = 0, i in {3, 4}:  2 |z_{7-i}|^3 / |z|^3
///   a zero block:          0
///   |z_1| = ... = |z_4|:   1 / sqrt 2
std::optional<double> h_covering_bound(const Point4& zbar);

/// Unit y with y1 z1 z2 = y2 (z1^2 - z2^2)/2 (blockwise for g, zero over a
/// zero block). The coderivative action has norm exactly 1 there. DomainError
/// at the origin; ConfigError for h.
VecX equality_locus_y(const VecX& z, MapId map);

/// Seeded covering centers in [-10, 10]^n. For f the list starts with the
/// origin and the two coordinate axes; for g it starts with points on each
/// degenerate stratum (one zero block, single nonzero coordinates) and never
/// contains the origin. The remainder is uniform in the cube.
std::vector<VecX> covering_centers(MapId map, int count, std::uint64_t seed);

/// A center of h together with the family it was drawn from.
struct HBoundCase {
  std::string family;
  Point4 center;
};

/// The three reference points (0,1,1,1), (1,1,1,1), (0,0,1,1) followed by
/// `variants` seeded variants of each: one zero coordinate in a random slot,
/// four equal magnitudes with random signs, and one zero block.
std::vector<HBoundCase> h_bound_cases(int variants, std::uint64_t seed);

}  // namespace coderiv

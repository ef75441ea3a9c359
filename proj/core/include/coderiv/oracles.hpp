#pragma once

#include "coderiv/types.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace coderiv {

/// Central-difference derivative in the same n x m layout as `jacobian`
/// (entry (j, i) = d map_i / d x_j). Requires |z| > 10 * step.
MatX fd_jacobian(MapId map, const VecX& z, double step = 1e-5);

/// Coderivative defining quotient
///   (<x, u - z> - <y, map(u) - map(z)>) / (|u - z| + |map(u) - map(z)|).
/// Throws DomainError when u == z.
double coderiv_quotient(MapId map, const VecX& z, const VecX& x, const VecX& y, const VecX& u);

struct LimsupEstimate {
  std::vector<double> radii;
  std::vector<double> max_per_radius;
  /// Max over the two smallest radii: the sampled proxy for the limsup.
  double estimate = 0.0;
  /// True when estimate <= the tolerance passed in.
  bool member = false;
};

/// Samples `dirs_per_radius` deterministic directions on each sphere
/// |u - z| = r and maximizes the quotient. Sampling under-estimates the
/// supremum on each sphere, so a large value certifies x is not in the
/// coderivative while a small value is only evidence of membership.
LimsupEstimate limsup_estimate(MapId map, const VecX& z, const VecX& x, const VecX& y,
                               const std::vector<double>& radii, int dirs_per_radius,
                               std::uint64_t seed = 0, double tolerance = 1e-3);

/// Default radii ladder 1e-1, 1e-2, ..., 1e-6.
std::vector<double> default_radii();

/// A path u(r) -> z used to probe a limit. RADIAL follows z + r * direction;
/// a custom curve returns the displacement u - z for each parameter value.
struct DirectionSchedule {
  VecX direction;
  std::vector<double> radii;
  std::function<VecX(double)> curve;  // empty for RADIAL

  static DirectionSchedule radial(VecX direction, std::vector<double> radii);
  static DirectionSchedule custom(VecX direction, std::vector<double> radii,
                                  std::function<VecX(double)> curve);

  VecX displacement(double r) const;
  /// Throws ConfigError unless radii are strictly decreasing and positive and
  /// the direction is a unit vector within 1e-12.
  void validate() const;
};

struct ProbeReport {
  std::vector<double> values;
  /// Componentwise vector values, when the probed quantity is a vector.
  std::vector<VecX> vectors;
  double extrapolated_limit = 0.0;
  VecX limit_vector;
  bool converged = false;
};

/// Extrapolates a sequence sampled at decreasing radii to r -> 0 (linear in
/// r from the two finest samples) and sets the convergence flag: the two
/// finest values differ by < 1e-4 relative or < 1e-8 absolute.
ProbeReport summarize_probe(const std::vector<double>& radii, std::vector<double> values,
                            std::vector<VecX> vectors = {});

/// Frechet residual (map(u) - map(z) - (u - z) * candidate) / |u - z| along
/// the schedule. A nonzero limit shows `candidate` is not the derivative.
ProbeReport frechet_residual_probe(MapId map, const VecX& z, const MatX& candidate,
                                   const DirectionSchedule& schedule);

/// Quotient of `coderiv_quotient` along a schedule.
ProbeReport quotient_probe(MapId map, const VecX& z, const VecX& x, const VecX& y,
                           const DirectionSchedule& schedule);

/// Difference quotients of f along u = (z1, z2 + s):
/// A(s) = (f1(z1, z2 + s) - f1(z)) / s, B(s) likewise for f2, evaluated in
/// the rationalized form that stays accurate for tiny s.
std::pair<double, double> directional_slopes_AB(const Point2& z, double s);

/// Closed-form limits of A(s) and B(s) as s -> 0+.
std::pair<double, double> slope_limits_AB(const Point2& z);

// --- origin analysis of f --------------------------------------------------

/// One of the special directions used to show the coderivative of f at the
/// origin is empty. Along the direction the quotient is constant in t
/// (f is positively homogeneous), so the closed-form limit is exact.
struct OriginCase {
  std::string label;
  Point2 direction;
  /// Closed-form limit of the quotient for candidate x and dual vector y.
  std::function<double(const Point2&, const Point2&)> limit;
};

/// Cases 1-6 plus the y1 > 0 probe (u1 = 0, u2 -> 0-) labelled "V", and the
/// alternative schedule for case 4 ("4-alt", u1 = -u2 with u1 -> 0-).
const std::vector<OriginCase>& origin_cases();

/// Necessary conditions (i)-(vi) for x in D^*f(0)(y): each case limit <= 0.
std::array<bool, 6> origin_conditions(const Point2& x, const Point2& y);

/// A lower bound m(y) on max over the case limits that holds for every x:
/// m(y) = max(|y2|/2, -y1/2, y1/(4 sqrt 2)). Positive exactly when y != 0,
/// which certifies D^*f(0)(y) is empty.
struct OriginCertificate {
  double lower_bound = 0.0;
  std::string reason;
};
OriginCertificate origin_certificate(const Point2& y);

/// Largest numerically probed quotient over all origin cases at radius t.
double origin_max_quotient(const Point2& x, const Point2& y, double t = 1e-6);

/// Schedules reproducing the non-differentiability arguments at a zero
/// block: candidate entry a = candidate(k, k) for the first coordinate k of
/// the zero block; u - z = -a t e_k when a != 0, t e_k otherwise.
DirectionSchedule origin_residual_schedule(MapId map, const VecX& z, const MatX& candidate,
                                           std::vector<double> radii = {});

/// The residual limit predicted for `origin_residual_schedule`:
/// row k of candidate scaled by sign(a), with 1 + |a| in slot k when a != 0;
/// e_k - row k when a == 0.
VecX predicted_origin_residual(const MatX& candidate, int k);

}  // namespace coderiv

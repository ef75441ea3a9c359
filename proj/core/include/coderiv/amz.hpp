#pragma once

#include "coderiv/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coderiv {

/// The perturbation x -> h(x, s) of the coincidence equation.
///   zero:   h = 0
///   affine: h = (matrix + s * s_matrix) x + offset + s * s_offset
///   sincos: h = scale * (sin x1, cos x2)
struct Perturbation {
  enum class Kind { kZero, kAffine, kSinCos };

  Kind kind = Kind::kZero;
  Mat2 matrix = Mat2::Zero();
  Mat2 s_matrix = Mat2::Zero();
  Point2 offset = Point2::Zero();
  Point2 s_offset = Point2::Zero();
  double scale = 0.0;

  Point2 operator()(const Point2& x, double s) const;
};

/// The parameter curve s -> omega(s).
///   anchor:   f(xbar) - h(xbar, s), so xbar solves the equation for every s
///   constant: value
///   linear:   value + s * slope
///   circle:   center + radius * (cos(frequency s + phase), sin(frequency s + phase))
struct OmegaCurve {
  enum class Kind { kAnchor, kConstant, kLinear, kCircle };

  Kind kind = Kind::kAnchor;
  Point2 value = Point2::Zero();
  Point2 slope = Point2::Zero();
  Point2 center = Point2::Zero();
  double radius = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

/// One instance of f(sigma(s)) = h(sigma(s), s) + omega(s) near the anchor.
struct Scenario {
  std::string name;
  Point2 xbar = Point2(1.0, 0.0);
  /// f(xbar), filled in by `finalize`.
  Point2 ybar = Point2(1.0, 0.0);
  Perturbation h;
  OmegaCurve omega;
  double beta = 0.0;
  double alpha = 0.9;
  /// Parameter interval used by `lipschitz_estimate`.
  double s_min = 0.0;
  double s_max = 1.0;

  Point2 perturbation(const Point2& x, double s) const { return h(x, s); }
  Point2 omega_at(double s) const;
};

/// Parses the key = value scenario format. '#' starts a comment; blank
/// lines are ignored. Keys:
///   name, anchor = x1, x2, target = y1, y2 (optional cross-check of f(anchor)),
///   perturbation = zero | affine | sincos, perturbation.matrix = a, b, c, d
///   (row-major), perturbation.s_matrix, perturbation.offset,
///   perturbation.s_offset, perturbation.scale,
///   omega = anchor | constant | linear | circle, omega.value, omega.slope,
///   omega.center, omega.radius, omega.frequency, omega.phase,
///   beta, alpha, s_range = lo, hi.
/// Throws ConfigError on unknown keys or malformed values.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Sets ybar = f(xbar) and checks the invariants: xbar != 0, finite data,
/// 0 <= beta < alpha < 1, and a spectral covering estimate of f at xbar equal
/// to 1 within 1e-6. Throws ConfigError.
void finalize(Scenario& scenario);

/// Empirical Lipschitz modulus of x -> h(x, s) over pairs in
/// B(xbar, radius), maximized over s in [s_min, s_max] (endpoints included).
/// Throws ConfigError when samples < 100 or when the estimate exceeds the
/// declared beta by more than 5%.
double lipschitz_estimate(const Scenario& scenario, double neighborhood_radius, int samples,
                          std::uint64_t seed = 0);

/// |ybar - h(xbar, s) - omega(s)|.
double dist_to_G(const Scenario& scenario, double s);

struct NewtonStep {
  int iteration = 0;
  Point2 x = Point2::Zero();
  double residual = 0.0;
  double step_length = 0.0;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, std::vector<NewtonStep> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<NewtonStep>& trace() const { return trace_; }

 private:
  std::vector<NewtonStep> trace_;
};

struct SolveReport {
  double s = 0.0;
  Point2 sigma = Point2::Zero();
  double residual = 0.0;
  double distance = 0.0;
  double bound = 0.0;
  bool bound_satisfied = false;
  int iterations = 0;
  bool converged = false;
  /// Failure message when `converged` is false.
  std::string failure;
};

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Iterates closer than this to the origin are rejected.
  double origin_guard = 1e-8;
  /// Central-difference step for the Jacobian of h.
  double fd_step = 1e-7;
};

/// Damped Newton on R(x) = f(x) - h(x, s) - omega(s) from `start` (xbar by
/// default). Throws NoConvergence with the iteration trace when the residual
/// stays above the tolerance.
SolveReport solve_parametric(const Scenario& scenario, double s,
                             std::optional<Point2> start = std::nullopt,
                             const NewtonOptions& options = {});

/// distance <= dist_to_G / (alpha - beta) + 1e-12, with the report's stored
/// bound cross-checked against the recomputed one.
bool verify_bound(const SolveReport& report, const Scenario& scenario);

/// Solves at every grid point. Failures are recorded in the reports. With
/// warm starting each solve begins at the previous converged sigma.
std::vector<SolveReport> sweep(const Scenario& scenario, const std::vector<double>& s_grid,
                               bool warm_start = true, const NewtonOptions& options = {});

/// a, a + step, ... up to b inclusive (within half a step of rounding).
std::vector<double> make_grid(double a, double b, double step);

}  // namespace coderiv

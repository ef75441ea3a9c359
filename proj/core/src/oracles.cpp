#include "coderiv/oracles.hpp"

#include "coderiv/mappings.hpp"
#include "coderiv/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace coderiv {

MatX fd_jacobian(MapId map, const VecX& z, double step) {
  const int n = dimension(map);
  if (z.size() != n) throw ConfigError("point dimension does not match map");
  if (!(step > 0.0)) throw ConfigError("finite-difference step must be positive");
  if (!(z.norm() > 10.0 * step)) throw DomainError("z is too close to the origin for the step");
  MatX out(n, n);
  for (int j = 0; j < n; ++j) {
    VecX plus = z;
    VecX minus = z;
    plus[j] += step;
    minus[j] -= step;
    out.row(j) = ((evaluate(map, plus) - evaluate(map, minus)) / (2.0 * step)).transpose();
  }
  return out;
}

double coderiv_quotient(MapId map, const VecX& z, const VecX& x, const VecX& y, const VecX& u) {
  const VecX du = u - z;
  const double du_norm = du.norm();
  if (du_norm == 0.0) throw DomainError("coderivative quotient is undefined at u == z");
  const VecX dm = evaluate(map, u) - evaluate(map, z);
  return (x.dot(du) - y.dot(dm)) / (du_norm + dm.norm());
}

std::vector<double> default_radii() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

LimsupEstimate limsup_estimate(MapId map, const VecX& z, const VecX& x, const VecX& y,
                               const std::vector<double>& radii, int dirs_per_radius,
                               std::uint64_t seed, double tolerance) {
  if (dirs_per_radius < 8) throw ConfigError("limsup_estimate needs at least 8 directions per radius");
  if (radii.size() < 2) throw ConfigError("limsup_estimate needs at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw ConfigError("radii must be positive and strictly decreasing");
    }
  }
  const int n = dimension(map);
  LimsupEstimate est;
  est.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (const VecX& d : sphere_directions(n, dirs_per_radius, derive_seed(seed, i))) {
      best = std::max(best, coderiv_quotient(map, z, x, y, z + radii[i] * d));
    }
    est.max_per_radius.push_back(best);
  }
  const std::size_t m = est.max_per_radius.size();
  est.estimate = std::max(est.max_per_radius[m - 1], est.max_per_radius[m - 2]);
  est.member = est.estimate <= tolerance;
  return est;
}

DirectionSchedule DirectionSchedule::radial(VecX direction, std::vector<double> radii) {
  DirectionSchedule s{std::move(direction), std::move(radii), {}};
  s.validate();
  return s;
}

DirectionSchedule DirectionSchedule::custom(VecX direction, std::vector<double> radii,
                                            std::function<VecX(double)> curve) {
  DirectionSchedule s{std::move(direction), std::move(radii), std::move(curve)};
  s.validate();
  return s;
}

VecX DirectionSchedule::displacement(double r) const { return curve ? curve(r) : VecX(r * direction); }

void DirectionSchedule::validate() const {
  if (radii.empty()) throw ConfigError("schedule needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw ConfigError("schedule radii must be positive and strictly decreasing");
    }
  }
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw ConfigError("schedule direction must be a unit vector");
}

ProbeReport summarize_probe(const std::vector<double>& radii, std::vector<double> values,
                            std::vector<VecX> vectors) {
  ProbeReport report;
  report.values = std::move(values);
  report.vectors = std::move(vectors);
  const std::size_t n = report.values.size();
  if (n == 0) return report;
  auto extrapolate = [&](double prev, double last) {
    const double r_prev = radii[n - 2];
    const double r_last = radii[n - 1];
    return last + (last - prev) * r_last / (r_prev - r_last);
  };
  const double last = report.values.back();
  if (n == 1) {
    report.extrapolated_limit = last;
    if (!report.vectors.empty()) report.limit_vector = report.vectors.back();
    return report;
  }
  const double prev = report.values[n - 2];
  report.extrapolated_limit = extrapolate(prev, last);
  const double diff = std::abs(last - prev);
  report.converged = diff < 1e-8 || diff < 1e-4 * std::max(std::abs(last), std::abs(prev));
  if (!report.vectors.empty()) {
    const VecX& vp = report.vectors[n - 2];
    const VecX& vl = report.vectors[n - 1];
    report.limit_vector = vl + (vl - vp) * (radii[n - 1] / (radii[n - 2] - radii[n - 1]));
  }
  return report;
}

ProbeReport frechet_residual_probe(MapId map, const VecX& z, const MatX& candidate,
                                   const DirectionSchedule& schedule) {
  schedule.validate();
  const VecX base = evaluate(map, z);
  std::vector<double> values;
  std::vector<VecX> vectors;
  for (double r : schedule.radii) {
    const VecX du = schedule.displacement(r);
    const VecX residual =
        (evaluate(map, z + du) - base - (du.transpose() * candidate).transpose()) / du.norm();
    values.push_back(residual.norm());
    vectors.push_back(residual);
  }
  return summarize_probe(schedule.radii, std::move(values), std::move(vectors));
}

ProbeReport quotient_probe(MapId map, const VecX& z, const VecX& x, const VecX& y,
                           const DirectionSchedule& schedule) {
  schedule.validate();
  std::vector<double> values;
  for (double r : schedule.radii) values.push_back(coderiv_quotient(map, z, x, y, z + schedule.displacement(r)));
  return summarize_probe(schedule.radii, std::move(values));
}

std::pair<double, double> directional_slopes_AB(const Point2& z, double s) {
  if (is_origin(z)) throw DomainError("slope functions need z != 0");
  const double z1 = z[0], z2 = z[1];
  const double r2 = z1 * z1 + z2 * z2;
  const double q2 = r2 + 2.0 * s * z2 + s * s;
  if (!(q2 > 0.0)) throw DomainError("(z1, z2 + s) must not be the origin");
  const double sr = std::sqrt(r2);
  const double sq = std::sqrt(q2);
  const double common = sq * sr * (sr + sq);
  const double a = -(z1 * z1 - z2 * z2) * (2.0 * z2 + s) / common + (-2.0 * z2 - s) / sq;
  const double b = -2.0 * z1 * z2 * (2.0 * z2 + s) / common + 2.0 * z1 / sq;
  return {a, b};
}

std::pair<double, double> slope_limits_AB(const Point2& z) {
  if (is_origin(z)) throw DomainError("slope functions need z != 0");
  const double z1 = z[0], z2 = z[1];
  const double r2 = z1 * z1 + z2 * z2;
  const double sr = std::sqrt(r2);
  const double d = r2 * sr;
  return {-(z1 * z1 - z2 * z2) * z2 / d - 2.0 * z2 / sr, -2.0 * z1 * z2 * z2 / d + 2.0 * z1 / sr};
}

const std::vector<OriginCase>& origin_cases() {
  static const std::vector<OriginCase> cases = [] {
    constexpr double s2 = std::numbers::sqrt2;
    const double h = 1.0 / s2;
    std::vector<OriginCase> c;
    c.push_back({"1", Point2(1, 0), [](const Point2& x, const Point2& y) { return (x[0] - y[0]) / 2; }});
    c.push_back({"2", Point2(-1, 0), [](const Point2& x, const Point2& y) { return (-x[0] - y[0]) / 2; }});
    c.push_back({"3", Point2(h, h),
                 [](const Point2& x, const Point2& y) { return (x[0] + x[1] - s2 * y[1]) / (2 * s2); }});
    c.push_back({"4", Point2(-h, -h),
                 [](const Point2& x, const Point2& y) { return (-x[0] - x[1] - s2 * y[1]) / (2 * s2); }});
    c.push_back({"5", Point2(-h, h),
                 [](const Point2& x, const Point2& y) { return (-x[0] + x[1] + s2 * y[1]) / (2 * s2); }});
    c.push_back({"6", Point2(h, -h),
                 [](const Point2& x, const Point2& y) { return (x[0] - x[1] + s2 * y[1]) / (2 * s2); }});
    c.push_back({"V", Point2(0, -1), [](const Point2& x, const Point2& y) { return (y[0] - x[1]) / 2; }});
    c.push_back({"4-alt", Point2(-h, h),
                 [](const Point2& x, const Point2& y) { return (-x[0] + x[1] + s2 * y[1]) / (2 * s2); }});
    return c;
  }();
  return cases;
}

std::array<bool, 6> origin_conditions(const Point2& x, const Point2& y) {
  std::array<bool, 6> out{};
  const auto& cases = origin_cases();
  for (std::size_t k = 0; k < 6; ++k) out[k] = cases[k].limit(x, y) <= 0.0;
  return out;
}

OriginCertificate origin_certificate(const Point2& y) {
  const double by_y2 = std::abs(y[1]) / 2;
  const double by_neg_y1 = -y[0] / 2;
  const double by_pos_y1 = y[0] / (4 * std::numbers::sqrt2);
  OriginCertificate cert;
  cert.lower_bound = std::max({by_y2, by_neg_y1, by_pos_y1});
  if (cert.lower_bound <= 0.0) {
    cert.lower_bound = 0.0;
    cert.reason = "y = 0: no case applies";
  } else if (cert.lower_bound == by_y2) {
    cert.reason = y[1] > 0 ? "cases 5+6 average y2/2" : "cases 3+4 average -y2/2";
  } else if (cert.lower_bound == by_neg_y1) {
    cert.reason = "cases 1+2 average -y1/2";
  } else {
    cert.reason = "probe V or cases 3+5 force y1 > 0 violation";
  }
  return cert;
}

double origin_max_quotient(const Point2& x, const Point2& y, double t) {
  const VecX origin = VecX::Zero(2);
  double best = -std::numeric_limits<double>::infinity();
  for (const OriginCase& c : origin_cases()) {
    best = std::max(best, coderiv_quotient(MapId::F2, origin, x, y, VecX(t * c.direction)));
  }
  return best;
}

namespace {

int zero_block_start(MapId map, const VecX& z) {
  switch (map) {
    case MapId::F2:
      if (is_origin(z)) return 0;
      break;
    case MapId::G4:
      if (is_origin(z.head(2))) return 0;
      if (is_origin(z.tail(2))) return 2;
      break;
    case MapId::H4:
      if (is_origin(z)) return 0;
      break;
  }
  throw ConfigError("origin residual schedule needs a zero block in z");
}

}  // namespace

DirectionSchedule origin_residual_schedule(MapId map, const VecX& z, const MatX& candidate,
                                           std::vector<double> radii) {
  if (radii.empty()) radii = default_radii();
  const int k = zero_block_start(map, z);
  const double a = candidate(k, k);
  VecX dir = VecX::Zero(z.size());
  if (a != 0.0) {
    dir[k] = a > 0 ? -1.0 : 1.0;
    for (double& r : radii) r *= std::abs(a);
  } else {
    dir[k] = 1.0;
  }
  return DirectionSchedule::radial(dir, std::move(radii));
}

VecX predicted_origin_residual(const MatX& candidate, int k) {
  const double a = candidate(k, k);
  VecX e = VecX::Zero(candidate.cols());
  e[k] = 1.0;
  if (a != 0.0) return e + (a > 0 ? 1.0 : -1.0) * candidate.row(k).transpose();
  return e - candidate.row(k).transpose();
}

}  // namespace coderiv

#include "coderiv/covering.hpp"

#include "coderiv/derivatives.hpp"
#include "coderiv/mappings.hpp"
#include "coderiv/sampling.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <numbers>

namespace coderiv {

double sigma_min(const Mat2& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double p = std::hypot(a + d, c - b);
  const double q = std::hypot(a - d, b + c);
  return std::abs(p - q) / 2.0;
}

double sigma_min(const Mat4& m) {
  Eigen::JacobiSVD<Mat4> svd(m);
  return svd.singularValues()(3);
}

double sigma_min(const MatX& m) {
  if (m.rows() == 2 && m.cols() == 2) return sigma_min(Mat2(m));
  if (m.rows() == 4 && m.cols() == 4) return sigma_min(Mat4(m));
  throw ConfigError("sigma_min expects a 2x2 or 4x4 matrix");
}

std::string_view to_string(CoveringMethod method) {
  return method == CoveringMethod::kSpectral ? "spectral" : "definitional";
}

CoveringMethod parse_covering_method(std::string_view text) {
  if (text == "spectral") return CoveringMethod::kSpectral;
  if (text == "definitional") return CoveringMethod::kDefinitional;
  throw ConfigError("unknown covering method: " + std::string(text));
}

std::string_view to_string(YConstraint::Kind kind) {
  switch (kind) {
    case YConstraint::Kind::kFullSphere:
      return "full_sphere";
    case YConstraint::Kind::kAdmissibleSubspace:
      return "admissible_subspace";
    case YConstraint::Kind::kEqualityLocus:
      return "equality_locus";
  }
  return "unknown";
}

namespace {

void check_point(MapId map, const VecX& z) {
  if (z.size() != dimension(map)) throw ConfigError("point dimension does not match map");
  require_finite(z, "point");
}

}  // namespace

std::optional<YConstraint> admissible_y(MapId map, const VecX& z) {
  check_point(map, z);
  if (is_origin(z)) return std::nullopt;
  if (map == MapId::G4) {
    const bool first = !is_origin(z.head(2));
    const bool second = !is_origin(z.tail(2));
    if (!(first && second)) return YConstraint::admissible({first, second});
  }
  return YConstraint::full_sphere();
}

std::optional<MatX> restricted_action(MapId map, const VecX& z) {
  const auto constraint = admissible_y(map, z);
  if (!constraint) return std::nullopt;
  if (constraint->kind == YConstraint::Kind::kAdmissibleSubspace) {
    const Point2 block = constraint->block_mask[0] ? Point2(z.head(2)) : Point2(z.tail(2));
    return MatX(jacobian_f(block));
  }
  return jacobian(map, z);
}

double pointwise_inf(MapId map, const VecX& z, const YConstraint& constraint) {
  if (constraint.kind == YConstraint::Kind::kEqualityLocus) {
    const VecX y = equality_locus_y(z, map);
    if (map == MapId::G4) return coderivative_g(Point4(z), Point4(y)).value().norm();
    return (jacobian(map, z) * y).norm();
  }
  const auto natural = admissible_y(map, z);
  if (!natural) throw DomainError("coderivative is empty for every unit y at this point");
  if (constraint.kind == YConstraint::Kind::kFullSphere &&
      natural->kind == YConstraint::Kind::kAdmissibleSubspace) {
    throw DomainError("coderivative is empty for y outside the admissible subspace");
  }
  return sigma_min(*restricted_action(map, z));
}

std::vector<double> default_etas() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

namespace {

template <int N>
Mat<N> random_orthogonal(Rng& rng) {
  Mat<N> g;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Mat<N>> qr(g);
  Mat<N> q = qr.householderQ();
  const Mat<N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int i = 0; i < N; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

template <int N>
std::vector<Vec<N>> fixed_directions(int count, std::uint64_t seed) {
  std::vector<Vec<N>> out;
  out.reserve(count);
  for (const VecX& d : sphere_directions(N, count, seed)) out.emplace_back(d);
  return out;
}

template <int N>
double sampled_min(const Mat<N>& a, const std::vector<Vec<N>>& dirs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : dirs) best = std::min(best, (a * d).squaredNorm());
  return std::sqrt(best);
}

class DefinitionalInf {
 public:
  DefinitionalInf(int y_samples, std::uint64_t seed) : count_(y_samples), seed_(seed) {}

  // Each point gets its own random rotation of the fixed direction set.
  double operator()(const MatX& a, Rng& rng) {
    if (a.rows() == 2) {
      if (dirs2_.empty()) dirs2_ = fixed_directions<2>(count_, seed_);
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      Mat2 rot;
      rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      return sampled_min<2>(Mat2(a) * rot, dirs2_);
    }
    if (dirs4_.empty()) dirs4_ = fixed_directions<4>(count_, seed_);
    return sampled_min<4>(Mat4(a) * random_orthogonal<4>(rng), dirs4_);
  }

 private:
  int count_;
  std::uint64_t seed_;
  std::vector<Point2> dirs2_;
  std::vector<Point4> dirs4_;
};

// Points of the closed ball that lie on lower-dimensional strata: each
// coordinate, and for the 4-d maps each block, zeroed when within reach.
std::vector<VecX> strata_points(MapId map, const VecX& zbar, double eta) {
  std::vector<VecX> out;
  for (int i = 0; i < zbar.size(); ++i) {
    if (zbar[i] != 0.0 && std::abs(zbar[i]) <= eta) {
      VecX p = zbar;
      p[i] = 0.0;
      out.push_back(p);
    }
  }
  if (dimension(map) == 4) {
    for (int b = 0; b < 4; b += 2) {
      const double norm = zbar.segment(b, 2).norm();
      if (norm != 0.0 && norm <= eta) {
        VecX p = zbar;
        p.segment(b, 2).setZero();
        out.push_back(p);
      }
    }
  }
  return out;
}

}  // namespace

CoveringEstimate covering_estimate(MapId map, const VecX& zbar, const std::vector<double>& etas,
                                   int y_samples, int z_samples, CoveringMethod method,
                                   std::uint64_t seed) {
  check_point(map, zbar);
  if (etas.empty()) throw ConfigError("eta ladder is empty");
  for (std::size_t k = 0; k < etas.size(); ++k) {
    if (!(etas[k] > 0.0) || (k > 0 && !(etas[k] < etas[k - 1]))) {
      throw ConfigError("etas must be positive and strictly decreasing");
    }
  }
  if (y_samples < 32 || z_samples < 32) throw ConfigError("sample counts must be at least 32");

  CoveringEstimate est;
  est.center = zbar;
  est.image = evaluate(map, zbar);
  est.etas = etas;
  est.method = method;
  est.y_samples = y_samples;

  const int n = dimension(map);
  DefinitionalInf definitional(y_samples, derive_seed(seed, 2));
  std::vector<double> own(etas.size(), std::numeric_limits<double>::infinity());

  for (std::size_t k = 0; k < etas.size(); ++k) {
    const double eta = etas[k];
    Rng rng(derive_seed(seed, 1, k));
    int accepted = 0;
    auto consider = [&](const VecX& z) {
      if ((evaluate(map, z) - est.image).norm() > eta) return;
      const auto op = restricted_action(map, z);
      if (!op) return;
      const double value = method == CoveringMethod::kSpectral ? sigma_min(*op) : definitional(*op, rng);
      own[k] = std::min(own[k], value);
      ++accepted;
    };

    consider(zbar);
    for (int i = 0; i < n; ++i) {
      VecX p = zbar;
      p[i] += eta;
      consider(p);
      p[i] -= 2.0 * eta;
      consider(p);
    }
    for (const VecX& p : strata_points(map, zbar, eta)) consider(p);

    const long max_attempts = 64L * z_samples;
    for (long attempt = 0; accepted < z_samples && attempt < max_attempts; ++attempt) {
      consider(random_in_ball(zbar, eta, rng));
    }
    est.z_used.push_back(accepted);
  }

  est.inf_per_eta = own;
  for (std::size_t k = etas.size() - 1; k-- > 0;) {
    est.inf_per_eta[k] = std::min(est.inf_per_eta[k], est.inf_per_eta[k + 1]);
  }
  est.estimate = *std::max_element(est.inf_per_eta.begin(), est.inf_per_eta.end());
  return est;
}

std::optional<double> h_covering_bound(const Point4& zbar) {
  require_finite(zbar, "point");
  if (is_origin(zbar)) throw DomainError("covering bound for h is undefined at the origin");
  const double r3 = std::pow(zbar.norm(), 3);
  std::optional<double> best;
  auto offer = [&](double v) { best = best ? std::min(*best, v) : v; };

  if (is_origin(zbar.head(2)) || is_origin(zbar.tail(2))) offer(0.0);
  for (int i = 0; i < 2; ++i) {
    if (zbar[i] == 0.0) offer(2.0 * std::pow(std::abs(zbar[1 - i]), 3) / r3);
  }
  for (int i = 2; i < 4; ++i) {
    if (zbar[i] == 0.0) offer(2.0 * std::pow(std::abs(zbar[5 - i]), 3) / r3);
  }
  const Point4 mag = zbar.cwiseAbs();
  if ((mag.array() == mag[0]).all()) offer(1.0 / std::numbers::sqrt2);
  return best;
}

namespace {

Point2 locus_block(const Point2& z) {
  const Point2 y((z[0] * z[0] - z[1] * z[1]) / 2.0, z[0] * z[1]);
  return y / y.norm();
}

}  // namespace

VecX equality_locus_y(const VecX& z, MapId map) {
  check_point(map, z);
  if (map == MapId::H4) throw ConfigError("equality locus is defined for f and g only");
  if (is_origin(z)) throw DomainError("equality locus is undefined at the origin");
  if (map == MapId::F2) return locus_block(Point2(z));
  VecX y = VecX::Zero(4);
  for (int b = 0; b < 4; b += 2) {
    const Point2 block(z.segment(b, 2));
    if (!is_origin(block)) y.segment(b, 2) = locus_block(block);
  }
  return y / y.norm();
}

}  // namespace coderiv

namespace coderiv {

namespace {

double nonzero_uniform(Rng& rng, double lo, double hi) {
  const double mag = rng.uniform(lo, hi);
  return rng.uniform() < 0.5 ? -mag : mag;
}

}  // namespace

std::vector<VecX> covering_centers(MapId map, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("center count must be positive");
  const int n = dimension(map);
  Rng rng(derive_seed(seed, 3));
  std::vector<VecX> out;
  if (n == 2) {
    out.push_back(VecX::Zero(2));
    out.push_back((VecX(2) << nonzero_uniform(rng, 0.1, 10.0), 0.0).finished());
    out.push_back((VecX(2) << 0.0, nonzero_uniform(rng, 0.1, 10.0)).finished());
  } else {
    for (int b = 0; b < 4; b += 2) {
      VecX p = VecX::Zero(4);
      p[2 - b] = nonzero_uniform(rng, 0.1, 10.0);
      p[3 - b] = nonzero_uniform(rng, 0.1, 10.0);
      out.push_back(p);
    }
    for (int i = 0; i < 4; ++i) {
      VecX p = VecX::Zero(4);
      p[i] = nonzero_uniform(rng, 0.1, 10.0);
      out.push_back(p);
    }
  }
  while (static_cast<int>(out.size()) < count) {
    VecX p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-10.0, 10.0);
    if (n == 4 && is_origin(p)) continue;
    out.push_back(p);
  }
  out.resize(count);
  return out;
}

std::vector<HBoundCase> h_bound_cases(int variants, std::uint64_t seed) {
  if (variants < 0) throw ConfigError("variant count must be nonnegative");
  std::vector<HBoundCase> out{{"one_zero", Point4(0, 1, 1, 1)},
                              {"equal_magnitudes", Point4(1, 1, 1, 1)},
                              {"zero_block", Point4(0, 0, 1, 1)}};
  Rng rng(derive_seed(seed, 4));
  for (int v = 0; v < variants; ++v) {
    Point4 p;
    for (int i = 0; i < 4; ++i) p[i] = nonzero_uniform(rng, 0.2, 5.0);
    p[static_cast<int>(rng.uniform() * 4.0) % 4] = 0.0;
    out.push_back({"one_zero", p});
  }
  for (int v = 0; v < variants; ++v) {
    const double c = rng.uniform(0.1, 10.0);
    Point4 p;
    for (int i = 0; i < 4; ++i) p[i] = rng.uniform() < 0.5 ? -c : c;
    out.push_back({"equal_magnitudes", p});
  }
  for (int v = 0; v < variants; ++v) {
    Point4 p = Point4::Zero();
    const int b = rng.uniform() < 0.5 ? 0 : 2;
    p[b] = nonzero_uniform(rng, 0.2, 5.0);
    p[b + 1] = nonzero_uniform(rng, 0.2, 5.0);
    out.push_back({"zero_block", p});
  }
  return out;
}

}  // namespace coderiv

#include "coderiv/amz.hpp"

#include "coderiv/covering.hpp"
#include "coderiv/derivatives.hpp"
#include "coderiv/mappings.hpp"
#include "coderiv/sampling.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace coderiv {

Point2 Perturbation::operator()(const Point2& x, double s) const {
  switch (kind) {
    case Kind::kZero:
      return Point2::Zero();
    case Kind::kAffine:
      return (matrix + s * s_matrix) * x + offset + s * s_offset;
    case Kind::kSinCos:
      return scale * Point2(std::sin(x[0]), std::cos(x[1]));
  }
  return Point2::Zero();
}

Point2 Scenario::omega_at(double s) const {
  switch (omega.kind) {
    case OmegaCurve::Kind::kAnchor:
      return eval_f(xbar) - h(xbar, s);
    case OmegaCurve::Kind::kConstant:
      return omega.value;
    case OmegaCurve::Kind::kLinear:
      return omega.value + s * omega.slope;
    case OmegaCurve::Kind::kCircle: {
      const double angle = omega.frequency * s + omega.phase;
      return omega.center + omega.radius * Point2(std::cos(angle), std::sin(angle));
    }
  }
  return Point2::Zero();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
      throw ConfigError("scenario key '" + key + "': malformed number '" + t + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> numbers(const std::string& key, const std::string& text, std::size_t count) {
  auto v = parse_numbers(key, text);
  if (v.size() != count) {
    throw ConfigError("scenario key '" + key + "' expects " + std::to_string(count) + " numbers");
  }
  return v;
}

Point2 point(const std::string& key, const std::string& text) {
  const auto v = numbers(key, text, 2);
  return {v[0], v[1]};
}

Mat2 matrix(const std::string& key, const std::string& text) {
  const auto v = numbers(key, text, 4);
  Mat2 m;
  m << v[0], v[1], v[2], v[3];
  return m;
}

double scalar(const std::string& key, const std::string& text) { return numbers(key, text, 1)[0]; }

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::optional<Point2> target;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(std::string_view(line).substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("scenario line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));

    if (key == "name") {
      sc.name = value;
    } else if (key == "anchor") {
      sc.xbar = point(key, value);
    } else if (key == "target") {
      target = point(key, value);
    } else if (key == "perturbation") {
      if (value == "zero") sc.h.kind = Perturbation::Kind::kZero;
      else if (value == "affine") sc.h.kind = Perturbation::Kind::kAffine;
      else if (value == "sincos") sc.h.kind = Perturbation::Kind::kSinCos;
      else throw ConfigError("unknown perturbation kind '" + value + "'");
    } else if (key == "perturbation.matrix") {
      sc.h.matrix = matrix(key, value);
    } else if (key == "perturbation.s_matrix") {
      sc.h.s_matrix = matrix(key, value);
    } else if (key == "perturbation.offset") {
      sc.h.offset = point(key, value);
    } else if (key == "perturbation.s_offset") {
      sc.h.s_offset = point(key, value);
    } else if (key == "perturbation.scale") {
      sc.h.scale = scalar(key, value);
    } else if (key == "omega") {
      if (value == "anchor") sc.omega.kind = OmegaCurve::Kind::kAnchor;
      else if (value == "constant") sc.omega.kind = OmegaCurve::Kind::kConstant;
      else if (value == "linear") sc.omega.kind = OmegaCurve::Kind::kLinear;
      else if (value == "circle") sc.omega.kind = OmegaCurve::Kind::kCircle;
      else throw ConfigError("unknown omega kind '" + value + "'");
    } else if (key == "omega.value") {
      sc.omega.value = point(key, value);
    } else if (key == "omega.slope") {
      sc.omega.slope = point(key, value);
    } else if (key == "omega.center") {
      sc.omega.center = point(key, value);
    } else if (key == "omega.radius") {
      sc.omega.radius = scalar(key, value);
    } else if (key == "omega.frequency") {
      sc.omega.frequency = scalar(key, value);
    } else if (key == "omega.phase") {
      sc.omega.phase = scalar(key, value);
    } else if (key == "beta") {
      sc.beta = scalar(key, value);
    } else if (key == "alpha") {
      sc.alpha = scalar(key, value);
    } else if (key == "s_range") {
      const auto r = numbers(key, value, 2);
      sc.s_min = r[0];
      sc.s_max = r[1];
    } else {
      throw ConfigError("unknown scenario key '" + key + "'");
    }
  }
  finalize(sc);
  if (target && ((*target - sc.ybar).norm() > 1e-12)) {
    throw ConfigError("scenario target does not equal f(anchor)");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str());
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

void finalize(Scenario& sc) {
  require_finite(sc.xbar, "anchor");
  if (is_origin(sc.xbar)) throw ConfigError("anchor must not be the origin");
  if (!(sc.s_min <= sc.s_max)) throw ConfigError("s_range must satisfy lo <= hi");
  if (!(sc.beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  if (!(sc.beta < sc.alpha)) throw ConfigError("beta must be below alpha");
  if (!(sc.alpha < 1.0)) throw ConfigError("alpha must be below the covering constant 1");
  sc.ybar = eval_f(sc.xbar);
  const auto cov = covering_estimate(MapId::F2, sc.xbar, default_etas(), 32, 32, CoveringMethod::kSpectral);
  if (std::abs(cov.estimate - 1.0) > 1e-6) {
    throw ConfigError("covering estimate of f at the anchor is not 1");
  }
}

double lipschitz_estimate(const Scenario& sc, double radius, int samples, std::uint64_t seed) {
  if (samples < 100) throw ConfigError("lipschitz_estimate needs at least 100 samples");
  if (!(radius > 0.0)) throw ConfigError("neighborhood radius must be positive");
  constexpr int kParams = 11;
  const int pairs = std::max(1, samples / kParams);
  Rng rng(seed);
  const VecX center = sc.xbar;
  double best = 0.0;
  for (int k = 0; k < kParams; ++k) {
    const double s = sc.s_min + (sc.s_max - sc.s_min) * k / (kParams - 1);
    for (int i = 0; i < pairs; ++i) {
      const Point2 a = random_in_ball(center, radius, rng);
      const Point2 b = random_in_ball(center, radius, rng);
      const double d = (a - b).norm();
      if (d == 0.0) continue;
      best = std::max(best, (sc.h(a, s) - sc.h(b, s)).norm() / d);
    }
  }
  if (best > 1.05 * sc.beta + 1e-12) {
    throw ConfigError("Lipschitz estimate " + std::to_string(best) + " exceeds declared beta");
  }
  return best;
}

double dist_to_G(const Scenario& sc, double s) { return (sc.ybar - sc.h(sc.xbar, s) - sc.omega_at(s)).norm(); }

namespace {

Point2 residual(const Scenario& sc, const Point2& x, double s) { return eval_f(x) - sc.h(x, s) - sc.omega_at(s); }

Mat2 perturbation_jacobian(const Scenario& sc, const Point2& x, double s, double step) {
  Mat2 j;
  for (int c = 0; c < 2; ++c) {
    Point2 plus = x, minus = x;
    plus[c] += step;
    minus[c] -= step;
    j.col(c) = (sc.h(plus, s) - sc.h(minus, s)) / (2.0 * step);
  }
  return j;
}

}  // namespace

SolveReport solve_parametric(const Scenario& sc, double s, std::optional<Point2> start,
                             const NewtonOptions& opt) {
  Point2 x = start.value_or(sc.xbar);
  Point2 r = residual(sc, x, s);
  double rn = r.norm();
  std::vector<NewtonStep> trace{{0, x, rn, 0.0}};
  int it = 0;
  while (rn > opt.tolerance) {
    if (it >= opt.max_iterations) {
      throw NoConvergence("no convergence after " + std::to_string(it) + " iterations", std::move(trace));
    }
    ++it;
    if (x.norm() < opt.origin_guard) {
      throw NoConvergence("iterate reached the origin", std::move(trace));
    }
    const Mat2 jac = coderivative_matrix_f(x) - perturbation_jacobian(sc, x, s, opt.fd_step);
    const Eigen::PartialPivLU<Mat2> lu(jac);
    if (!(std::abs(jac.determinant()) > 0.0)) {
      throw NoConvergence("singular Newton matrix", std::move(trace));
    }
    const Point2 delta = lu.solve(-r);
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-12) {
      const Point2 candidate = x + t * delta;
      if (candidate.norm() >= opt.origin_guard) {
        const Point2 rc = residual(sc, candidate, s);
        if (rc.norm() < rn) {
          x = candidate;
          r = rc;
          rn = rc.norm();
          accepted = true;
          break;
        }
      }
      t /= 2.0;
    }
    trace.push_back({it, x, rn, accepted ? t : 0.0});
    if (!accepted) throw NoConvergence("line search failed", std::move(trace));
  }

  SolveReport rep;
  rep.s = s;
  rep.sigma = x;
  rep.residual = rn;
  rep.distance = (x - sc.xbar).norm();
  rep.bound = dist_to_G(sc, s) / (sc.alpha - sc.beta);
  rep.bound_satisfied = rep.distance <= rep.bound + 1e-12;
  rep.iterations = it;
  rep.converged = true;
  return rep;
}

bool verify_bound(const SolveReport& rep, const Scenario& sc) {
  const double bound = dist_to_G(sc, rep.s) / (sc.alpha - sc.beta);
  const bool consistent = std::abs(bound - rep.bound) <= 1e-12 * std::max(1.0, bound);
  return consistent && rep.distance <= bound + 1e-12;
}

std::vector<SolveReport> sweep(const Scenario& sc, const std::vector<double>& grid, bool warm_start,
                               const NewtonOptions& opt) {
  std::vector<SolveReport> out;
  out.reserve(grid.size());
  std::optional<Point2> start;
  for (double s : grid) {
    try {
      out.push_back(solve_parametric(sc, s, warm_start ? start : std::nullopt, opt));
      start = out.back().sigma;
    } catch (const NoConvergence& e) {
      SolveReport rep;
      rep.s = s;
      const auto& trace = e.trace();
      rep.sigma = trace.back().x;
      rep.residual = trace.back().residual;
      rep.distance = (rep.sigma - sc.xbar).norm();
      rep.bound = dist_to_G(sc, s) / (sc.alpha - sc.beta);
      rep.iterations = trace.back().iteration;
      rep.failure = e.what();
      out.push_back(rep);
    }
  }
  return out;
}

std::vector<double> make_grid(double a, double b, double step) {
  if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("invalid grid");
  if (b < a) throw ConfigError("grid end lies before its start");
  const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  if (n > 1000000) throw ConfigError("grid too large");
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

}  // namespace coderiv

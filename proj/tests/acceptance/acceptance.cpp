// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance          run all criteria
//   acceptance c3       run one criterion (exit 1 on FAIL)

#include <coderiv/amz.hpp>
#include <coderiv/covering.hpp>
#include <coderiv/derivatives.hpp>
#include <coderiv/mappings.hpp>
#include <coderiv/oracles.hpp>
#include <coderiv/polyid.hpp>
#include <coderiv/sampling.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace coderiv;

namespace {

constexpr std::uint64_t kSeed = 20240611;

// Pinned tolerances.
constexpr double kCoveringSpectralTol = 1e-9;
constexpr double kCoveringDefinitionalTol = 1e-6;
constexpr int kDefinitionalYSamples = 4096;
constexpr int kZSamples = 64;
constexpr int kSpectralYSamples = 512;  // unused by the spectral inner inf
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-6;
constexpr double kExpansionSlack = 1e-12;  // relative rounding slack for |J y| >= |y|
constexpr double kEqualityTol = 1e-10;
constexpr double kSingularTol = 1e-9;
constexpr double kResidualLimitTol = 1e-6;
constexpr double kY1ProbeTol = 1e-3;
constexpr double kHBoundSlack = 1e-6;
constexpr double kHZeroTol = 1e-9;
constexpr double kSolverResidualTol = 1e-10;
constexpr double kClosedFormTol = 1e-9;
constexpr double kLipschitzRelTol = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0.0;  // 0: no runtime limit
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string source_dir_file(const std::string& name) { return std::string(CODERIV_SCENARIO_DIR) + "/" + name; }

VecX cube_point(int n, Rng& rng, double lo, double hi) {
  VecX v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// Residual limit of a candidate at a point where block k of the map is at
// the origin: (1 + |a|, sign(a) * rest of row k), or (1, -rest) when a = 0.
VecX closed_form_residual_limit(const MatX& cand, int k) {
  const double a = cand(k, k);
  VecX v = (a == 0.0 ? -1.0 : (a > 0 ? 1.0 : -1.0)) * VecX(cand.row(k).transpose());
  v[k] = 1.0 + std::abs(a);
  return v;
}

Outcome covering_suite(MapId map, int count, double runtime, bool definitional) {
  Outcome o{true, "", runtime};
  double worst = 0.0, worst_def = 0.0;
  for (const VecX& c : covering_centers(map, count, kSeed)) {
    const auto est = covering_estimate(map, c, default_etas(), kSpectralYSamples, kZSamples, CoveringMethod::kSpectral, kSeed);
    worst = std::max(worst, std::abs(est.estimate - 1.0));
    if (definitional) {
      const auto d = covering_estimate(map, c, default_etas(), kDefinitionalYSamples, kZSamples,
                                       CoveringMethod::kDefinitional, kSeed);
      worst_def = std::max(worst_def, std::abs(d.estimate - 1.0));
    }
  }
  o.pass = worst <= kCoveringSpectralTol && worst_def <= kCoveringDefinitionalTol;
  o.detail = std::to_string(count) + " centers, spectral max |est-1| = " + fmt(worst);
  if (definitional) o.detail += ", definitional max |est-1| = " + fmt(worst_def);
  return o;
}

Outcome c1() { return covering_suite(MapId::F2, 100, 10.0, true); }

Outcome c2() {
  Outcome o = covering_suite(MapId::G4, 100, 30.0, false);
  // The degenerate centers must actually use the admissible subspace.
  int restricted = 0;
  for (const VecX& c : covering_centers(MapId::G4, 100, kSeed)) {
    const auto y = admissible_y(MapId::G4, c);
    if (y && y->kind == YConstraint::Kind::kAdmissibleSubspace) ++restricted;
  }
  o.pass = o.pass && restricted >= 2;
  o.detail += ", " + std::to_string(restricted) + " zero-block centers";
  return o;
}

Outcome c3() {
  Outcome o;
  Rng rng(derive_seed(kSeed, 3));
  std::string parts;
  for (MapId map : {MapId::F2, MapId::G4, MapId::H4}) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const VecX z = random_in_shell(dimension(map), 0.1, 10.0, rng);
      worst = std::max(worst, (jacobian(map, z) - fd_jacobian(map, z, kFdStep)).cwiseAbs().maxCoeff());
    }
    o.pass = o.pass && worst <= kFdTol;
    parts += std::string(parts.empty() ? "" : ", ") + std::string(to_string(map)) + " " + fmt(worst);
  }
  o.detail = "1000 points per map, max entrywise error: " + parts;
  return o;
}

Outcome c4() {
  using namespace coderiv::poly;
  BlockCoefficients mutated;
  mutated.a2 = 2;
  const bool f_ok = verify_f_norm_identity();
  const bool g_ok = verify_g_norm_identity();
  const bool f_mut = verify_f_norm_identity(mutated);
  const bool g_mut = verify_g_norm_identity({}, mutated);
  Outcome o;
  o.pass = f_ok && g_ok && !f_mut && !g_mut;
  o.detail = std::string("f_norm=") + (f_ok ? "true" : "false") + " g_norm=" + (g_ok ? "true" : "false") +
             " mutations=" + (f_mut || g_mut ? "true" : "false");
  return o;
}

Outcome c5() {
  Outcome o;
  Rng rng(derive_seed(kSeed, 5));
  double min_ratio = INFINITY;
  double worst_eq = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Point2 z = cube_point(2, rng, -10, 10);
    const Point2 y = cube_point(2, rng, -10, 10);
    if (is_origin(z) || is_origin(y)) continue;
    const double ratio = coderivative_f(z, y).value().norm() / y.norm();
    min_ratio = std::min(min_ratio, ratio);
    // A point on the locus y1 z1 z2 = y2 (z1^2 - z2^2) / 2.
    const double t = rng.uniform(-2.0, 2.0);
    const Point2 ye = t * Point2((z[0] * z[0] - z[1] * z[1]) / 2.0, z[0] * z[1]);
    if (ye.norm() == 0.0) continue;
    const double n = coderivative_f(z, ye).value().norm();
    worst_eq = std::max(worst_eq, std::abs(n - ye.norm()) / ye.norm());
  }
  o.pass = min_ratio >= 1.0 - kExpansionSlack && worst_eq <= kEqualityTol;
  o.detail = "min |x|/|y| = " + fmt(min_ratio) + ", max relative gap on locus = " + fmt(worst_eq);
  return o;
}

Outcome c6() {
  Outcome o;
  Rng rng(derive_seed(kSeed, 6));
  double wf = 0.0, wg = 0.0;
  const Eigen::Vector2d sf(2, 1);
  const Eigen::Vector4d sg(2, 2, 1, 1);
  for (int i = 0; i < 10000; ++i) {
    const Point2 z = cube_point(2, rng, -10, 10);
    const Eigen::JacobiSVD<Mat2> svd(jacobian_f(z));
    wf = std::max(wf, (svd.singularValues() - sf).cwiseAbs().maxCoeff());
    const Point4 w = cube_point(4, rng, -10, 10);
    const Eigen::JacobiSVD<Mat4> svd4(jacobian_g(w));
    wg = std::max(wg, (svd4.singularValues() - sg).cwiseAbs().maxCoeff());
  }
  o.pass = wf <= kSingularTol && wg <= kSingularTol;
  o.detail = "10000 points, max deviation f " + fmt(wf) + ", g " + fmt(wg);
  return o;
}

Outcome c7() {
  Outcome o;
  Rng rng(derive_seed(kSeed, 7));
  int families = 0;
  double worst = 0.0;
  auto family = [&](MapId map, const VecX& z, int k) {
    const int n = dimension(map);
    for (int i = 0; i < 12; ++i) {
      MatX cand(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) cand(a, b) = rng.uniform(-2.0, 2.0);
      }
      if (i % 3 == 0) cand(k, k) = 0.0;
      const auto probe = frechet_residual_probe(map, z, cand, origin_residual_schedule(map, z, cand));
      const VecX expected = closed_form_residual_limit(cand, k);
      const double gap = (probe.limit_vector - expected).norm();
      worst = std::max(worst, gap);
      o.pass = o.pass && probe.converged && gap <= kResidualLimitTol && probe.limit_vector.norm() > 0.0;
      ++families;
    }
  };
  family(MapId::F2, VecX::Zero(2), 0);
  family(MapId::G4, VecX::Zero(4), 0);
  family(MapId::G4, (VecX(4) << 0, 0, 1.3, -0.4).finished(), 0);
  family(MapId::G4, (VecX(4) << 0.7, 1.1, 0, 0).finished(), 2);

  const Point2 y(1.0, 0.0);
  const auto probe = quotient_probe(MapId::F2, VecX::Zero(2), Point2::Zero(), y,
                                    DirectionSchedule::radial(Point2(0.0, -1.0), default_radii()));
  const double y1_gap = std::abs(probe.extrapolated_limit - y[0] / 2.0);
  o.pass = o.pass && y1_gap <= kY1ProbeTol;

  int empty = 0;
  for (int i = 0; i < 100; ++i) {
    const Point2 yr = random_unit_vector(2, rng) * rng.uniform(0.1, 10.0);
    const auto cert = origin_certificate(yr);
    double best = -INFINITY;
    for (const OriginCase& oc : origin_cases()) best = std::max(best, oc.limit(Point2::Zero(), yr));
    if (cert.lower_bound > 0.0 && best > 0.0 && coderivative_f(Point2::Zero(), yr).is_empty()) ++empty;
  }
  o.pass = o.pass && empty == 100;
  o.detail = std::to_string(families) + " candidates, max residual gap " + fmt(worst) + ", y1 probe gap " +
             fmt(y1_gap) + ", EMPTY for " + std::to_string(empty) + "/100 y";
  return o;
}

Outcome c8() {
  Outcome o;
  int failures = 0, total = 0;
  double zero_worst = 0.0, excess = 0.0;
  std::map<std::string, int> failed_by_family;
  for (const auto& hc : h_bound_cases(20, kSeed)) {
    const auto bound = h_covering_bound(hc.center);
    const auto est = covering_estimate(MapId::H4, hc.center, default_etas(), kSpectralYSamples, kZSamples,
                                       CoveringMethod::kSpectral, kSeed);
    ++total;
    if (!bound || est.estimate > *bound + kHBoundSlack) {
      ++failures;
      ++failed_by_family[hc.family];
      if (bound) excess = std::max(excess, est.estimate - *bound);
    }
    if (hc.family == "zero_block") zero_worst = std::max(zero_worst, std::abs(est.estimate));
  }
  o.pass = failures == 0 && zero_worst <= kHZeroTol;
  o.detail = std::to_string(total - failures) + "/" + std::to_string(total) + " within bound";
  for (const auto& [family, n] : failed_by_family) o.detail += ", " + family + " over bound: " + std::to_string(n);
  if (failures > 0) o.detail += " (max excess " + fmt(excess) + ")";
  o.detail += ", zero block max |est| = " + fmt(zero_worst);
  return o;
}

Outcome c9() {
  Outcome o{true, "", 5.0};
  Scenario rot = load_scenario(source_dir_file("rotation.scn"));
  const auto grid = make_grid(0.0, 0.5, 0.05);
  double res = 0.0, cf = 0.0;
  int bounds = 0, checks = 0;
  for (double alpha : {0.5, 0.9, 0.99}) {
    rot.alpha = alpha;
    for (const SolveReport& r : sweep(rot, grid)) {
      res = std::max(res, r.converged ? r.residual : INFINITY);
      cf = std::max(cf, (r.sigma - Point2(std::cos(r.s / 2), std::sin(r.s / 2))).cwiseAbs().maxCoeff());
      ++checks;
      if (r.converged && verify_bound(r, rot)) ++bounds;
    }
  }
  Scenario lin = load_scenario(source_dir_file("scaled_linear.scn"));
  lin.alpha = 0.9;
  double beta_est = NAN;
  bool beta_ok = false;
  try {
    beta_est = lipschitz_estimate(lin, 0.5, 11000, kSeed);
    beta_ok = std::abs(beta_est - 0.2) <= kLipschitzRelTol * 0.2;
  } catch (const ConfigError&) {
  }
  int lin_ok = 0, lin_total = 0;
  for (const SolveReport& r : sweep(lin, make_grid(lin.s_min, lin.s_max, 0.1))) {
    ++lin_total;
    if (r.converged && r.residual <= kSolverResidualTol && verify_bound(r, lin)) ++lin_ok;
  }
  o.pass = res <= kSolverResidualTol && cf <= kClosedFormTol && bounds == checks && beta_ok &&
           lin_ok == lin_total;
  o.detail = "rotation: max residual " + fmt(res) + ", max closed-form gap " + fmt(cf) + ", bound " +
             std::to_string(bounds) + "/" + std::to_string(checks) + "; scaled_linear: beta " + fmt(beta_est) +
             ", bound " + std::to_string(lin_ok) + "/" + std::to_string(lin_total);
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome c10() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("coderiv_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands = {
      "covering --map f --seed 7",
      "covering --map g --seed 7 --method definitional --count 20",
      "verify-jacobians --map h --seed 7",
      "probe-origin --map g --seed 7",
      "identities",
      "sweep --scenario " + source_dir_file("rotation.scn") + " --s-grid 0:0.5:0.05 --seed 7",
  };
  int identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".jsonl");
      const std::string cmd = std::string(CODERIV_TOOL) + " " + commands[i] + " --output " + path.string() +
                              " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      (void)status;
      contents[rep] = slurp(path);
    }
    if (!contents[0].empty() && contents[0] == contents[1]) ++identical;
  }
  std::filesystem::remove_all(dir);
  o.pass = identical == static_cast<int>(commands.size());
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " reports byte-identical";
  return o;
}

const std::map<std::string, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> table = {
      {"c1", {"covering constant of f is 1", c1}},
      {"c2", {"covering constant of g is 1", c2}},
      {"c3", {"analytic jacobians match finite differences", c3}},
      {"c4", {"exact norm identities", c4}},
      {"c5", {"expansion and equality locus of f", c5}},
      {"c6", {"singular values of the jacobians of f and g", c6}},
      {"c7", {"behaviour at the origin", c7}},
      {"c8", {"covering bounds for h", c8}},
      {"c9", {"parametric solver distance bound", c9}},
      {"c10", {"deterministic CLI reports", c10}},
  };
  return table;
}

bool run_one(const std::string& id) {
  const auto& [title, fn] = criteria().at(id);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.limit_seconds > 0.0 && secs > o.limit_seconds) {
    o.pass = false;
    o.detail += ", runtime over " + fmt(o.limit_seconds) + " s";
  }
  std::printf("%s %s: %s -- %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    const std::string id = argv[1];
    if (!criteria().count(id)) {
      std::fprintf(stderr, "unknown criterion %s (expected c1..c10)\n", id.c_str());
      return 2;
    }
    return run_one(id) ? 0 : 1;
  }
  bool all = true;
  for (int i = 1; i <= 10; ++i) all = run_one("c" + std::to_string(i)) && all;
  return all ? 0 : 1;
}

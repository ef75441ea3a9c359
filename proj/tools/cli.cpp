#include "cli.hpp"

#include "coderiv/derivatives.hpp"
#include "coderiv/mappings.hpp"
#include "coderiv/oracles.hpp"
#include "coderiv/polyid.hpp"
#include "coderiv/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace coderiv::cli {

using Json = nlohmann::ordered_json;

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kVerifyJacobians:
      return "verify-jacobians";
    case Command::kProbeOrigin:
      return "probe-origin";
    case Command::kCovering:
      return "covering";
    case Command::kIdentities:
      return "identities";
    case Command::kSolve:
      return "solve";
    case Command::kSweep:
      return "sweep";
  }
  return "unknown";
}

namespace {

constexpr const char* kCsvHelp = R"(CSV columns (JSON lines are the canonical format):
  verify-jacobians  record,map,z,max_abs_error,pass
  probe-origin      record,label,value,expected,pass
  covering          record,map,family,center,estimate,bound,pass
  identities        record,identity,result,expected,pass
  solve, sweep      record,s,sigma,residual,distance,bound,bound_satisfied,iterations,converged,failure
Vectors are written as ';'-separated coordinates.)";

std::vector<std::string> csv_columns(Command command) {
  switch (command) {
    case Command::kVerifyJacobians:
      return {"record", "map", "z", "max_abs_error", "pass"};
    case Command::kProbeOrigin:
      return {"record", "label", "value", "expected", "pass"};
    case Command::kCovering:
      return {"record", "map", "family", "center", "estimate", "bound", "pass"};
    case Command::kIdentities:
      return {"record", "identity", "result", "expected", "pass"};
    case Command::kSolve:
    case Command::kSweep:
      return {"record",   "s",          "sigma",     "residual",  "distance",
              "bound",    "bound_satisfied", "iterations", "converged", "failure"};
  }
  return {};
}

UsageError usage(const std::string& what) { return UsageError(what, 2, "error: " + what + "\n"); }

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw usage("malformed number '" + text + "' in " + what);
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, char sep, const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, sep)) out.push_back(parse_double(item, what));
  if (!text.empty() && text.back() == sep) throw usage("trailing separator in " + what);
  return out;
}

VecX to_vec(const std::vector<double>& v) {
  VecX out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Json vec_json(const VecX& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// --- suites -----------------------------------------------------------------

struct SuiteResult {
  std::vector<Json> records;
  bool pass = true;
};

std::vector<VecX> jacobian_points(const RunConfig& c) {
  if (!c.points.empty()) return c.points;
  const int n = dimension(c.map);
  const int count = c.count > 0 ? c.count : 1000;
  Rng rng(derive_seed(c.seed, 10));
  std::vector<VecX> out;
  for (int i = 0; i < count; ++i) out.push_back(random_in_shell(n, 0.1, 10.0, rng));
  return out;
}

SuiteResult verify_jacobians(const RunConfig& c) {
  const double tol = c.tol.value_or(1e-6);
  SuiteResult r;
  double worst = 0.0;
  int checked = 0;
  for (const VecX& z : jacobian_points(c)) {
    Json rec{{"record", "point"}, {"map", to_string(c.map)}, {"z", vec_json(z)}};
    if (!is_differentiable(c.map, z)) {
      rec["differentiable"] = false;
      rec["max_abs_error"] = nullptr;
      rec["pass"] = true;
      r.records.push_back(rec);
      continue;
    }
    const double err = (jacobian(c.map, z) - fd_jacobian(c.map, z, c.fd_step)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    ++checked;
    rec["max_abs_error"] = err;
    rec["pass"] = err <= tol;
    r.pass = r.pass && err <= tol;
    r.records.push_back(rec);
  }
  r.records.push_back(Json{{"record", "summary"},
                           {"command", "verify-jacobians"},
                           {"map", to_string(c.map)},
                           {"points", checked},
                           {"fd_step", c.fd_step},
                           {"tol", tol},
                           {"max_abs_error", worst},
                           {"pass", r.pass}});
  return r;
}

// Seeded candidate matrices; every third one has a zero at the probed
// diagonal slot so both residual branches are exercised.
std::vector<MatX> candidate_family(int n, int k, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MatX> out;
  for (int i = 0; i < count; ++i) {
    MatX m(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) m(a, b) = rng.uniform(-2.0, 2.0);
    }
    if (i % 3 == 0) m(k, k) = 0.0;
    out.push_back(m);
  }
  return out;
}

void residual_family(SuiteResult& r, MapId map, const VecX& z, int k, int count, std::uint64_t seed,
                     const std::string& label) {
  int idx = 0;
  for (const MatX& cand : candidate_family(dimension(map), k, count, seed)) {
    const auto schedule = origin_residual_schedule(map, z, cand);
    const auto probe = frechet_residual_probe(map, z, cand, schedule);
    const VecX predicted = predicted_origin_residual(cand, k);
    const double mismatch = (probe.limit_vector - predicted).norm();
    const bool ok = probe.converged && mismatch <= 1e-6 && predicted.norm() > 0.0;
    r.pass = r.pass && ok;
    r.records.push_back(Json{{"record", "residual"},
                             {"label", label + "#" + std::to_string(idx++)},
                             {"z", vec_json(z)},
                             {"candidate_a", cand(k, k)},
                             {"value", vec_json(probe.limit_vector)},
                             {"expected", vec_json(predicted)},
                             {"mismatch", mismatch},
                             {"converged", probe.converged},
                             {"pass", ok}});
  }
}

// Case table, the y1 > 0 probe and the certificate for one 2-d block of y.
bool origin_block(SuiteResult& r, const Point2& y, const std::string& prefix, double tol) {
  const Point2 x = Point2::Zero();
  const VecX origin = VecX::Zero(2);
  for (const OriginCase& oc : origin_cases()) {
    const double limit = oc.limit(x, y);
    const double q = coderiv_quotient(MapId::F2, origin, x, y, VecX(1e-6 * oc.direction));
    const bool ok = std::abs(q - limit) <= 1e-9 * std::max(1.0, std::abs(limit));
    r.pass = r.pass && ok;
    r.records.push_back(Json{{"record", "case"},
                             {"label", prefix + oc.label},
                             {"direction", vec_json(oc.direction)},
                             {"value", q},
                             {"expected", limit},
                             {"pass", ok}});
  }

  const auto schedule = DirectionSchedule::radial(Point2(0.0, -1.0), default_radii());
  const auto probe = quotient_probe(MapId::F2, origin, x, y, schedule);
  const bool v_ok = std::abs(probe.extrapolated_limit - y[0] / 2.0) <= tol;
  r.pass = r.pass && v_ok;
  r.records.push_back(Json{{"record", "y1_probe"},
                           {"label", prefix + "V"},
                           {"values", probe.values},
                           {"value", probe.extrapolated_limit},
                           {"expected", y[0] / 2.0},
                           {"pass", v_ok}});

  const auto conditions = origin_conditions(x, y);
  Json cond = Json::array();
  for (bool b : conditions) cond.push_back(b);
  const auto cert = origin_certificate(y);
  const bool nonzero = !is_origin(y);
  const bool empty = coderivative_f(Point2::Zero(), y).is_empty();
  const bool cert_ok = nonzero ? (cert.lower_bound > 0.0 && empty) : (cert.lower_bound == 0.0 && !empty);
  r.pass = r.pass && cert_ok;
  r.records.push_back(Json{{"record", "certificate"},
                           {"label", prefix + "certificate"},
                           {"y", vec_json(y)},
                           {"conditions_at_x0", cond},
                           {"value", cert.lower_bound},
                           {"expected", nonzero ? "positive" : "zero"},
                           {"reason", cert.reason},
                           {"max_quotient", origin_max_quotient(x, y)},
                           {"pass", cert_ok}});
  return nonzero;
}

SuiteResult probe_origin(const RunConfig& c) {
  const double tol = c.tol.value_or(1e-3);
  const int n = dimension(c.map);
  if (c.map == MapId::H4) throw ConfigError("probe-origin supports the maps f and g");
  const VecX y = c.points.empty() ? (n == 2 ? VecX(Point2(1, 0)) : VecX(Point4(1, 0, 0, 0))) : c.points.front();
  const int family = c.count > 0 ? c.count : 12;
  SuiteResult r;
  std::string verdict;
  if (c.map == MapId::F2) {
    const bool nonzero = origin_block(r, Point2(y), "", tol);
    residual_family(r, MapId::F2, VecX::Zero(2), 0, family, derive_seed(c.seed, 20), "origin");
    verdict = nonzero ? "EMPTY-consistent" : "THETA";
  } else {
    bool any = false;
    for (int b = 0; b < 4; b += 2) {
      const std::string prefix = b == 0 ? "block1:" : "block2:";
      any = origin_block(r, Point2(y.segment(b, 2)), prefix, tol) || any;
    }
    const bool empty = coderivative_g(Point4::Zero(), Point4(y)).is_empty();
    r.pass = r.pass && (empty == any);
    Rng rng(derive_seed(c.seed, 21));
    for (int b = 0; b < 4; b += 2) {
      VecX z = VecX::Zero(4);
      z[2 - b] = rng.uniform(0.5, 2.0);
      z[3 - b] = rng.uniform(-2.0, 2.0);
      residual_family(r, MapId::G4, z, b, family, derive_seed(c.seed, 22, b), b == 0 ? "block1" : "block2");
    }
    residual_family(r, MapId::G4, VecX::Zero(4), 0, family, derive_seed(c.seed, 23), "origin");
    verdict = any ? "EMPTY-consistent" : "THETA";
  }
  r.records.push_back(Json{{"record", "summary"},
                           {"command", "probe-origin"},
                           {"map", to_string(c.map)},
                           {"y", vec_json(y)},
                           {"label", "verdict"},
                           {"value", verdict},
                           {"pass", r.pass}});
  return r;
}

SuiteResult covering(const RunConfig& c) {
  const double tol = c.tol.value_or(c.method == CoveringMethod::kSpectral ? 1e-9 : 1e-6);
  SuiteResult r;
  struct Center {
    std::string family;
    VecX z;
  };
  std::vector<Center> centers;
  if (!c.points.empty()) {
    for (const VecX& p : c.points) centers.push_back({"given", p});
  } else if (c.map == MapId::H4) {
    for (const auto& hc : h_bound_cases(c.count > 0 ? c.count : 20, c.seed)) centers.push_back({hc.family, hc.center});
  } else {
    for (const VecX& p : covering_centers(c.map, c.count > 0 ? c.count : 100, c.seed)) centers.push_back({"random", p});
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const VecX& z = centers[i].z;
    const auto est = covering_estimate(c.map, z, c.etas, c.y_samples, c.z_samples, c.method, derive_seed(c.seed, 30, i));
    Json rec{{"record", "center"},
             {"map", to_string(c.map)},
             {"family", centers[i].family},
             {"center", vec_json(z)},
             {"image", vec_json(est.image)},
             {"method", to_string(c.method)},
             {"etas", est.etas},
             {"inf_per_eta", Json::array()},
             {"z_used", est.z_used},
             {"estimate", number_or_null(est.estimate)}};
    for (double v : est.inf_per_eta) rec["inf_per_eta"].push_back(number_or_null(v));
    bool ok = true;
    if (c.map == MapId::H4) {
      const auto bound = is_origin(z) ? std::nullopt : h_covering_bound(Point4(z));
      rec["bound"] = bound ? Json(*bound) : Json(nullptr);
      if (bound) {
        ok = est.estimate <= *bound + 1e-6;
        if (*bound == 0.0) ok = ok && std::abs(est.estimate) <= 1e-9;
        rec["asserted"] = true;
      } else {
        rec["asserted"] = false;
      }
    } else if (c.map == MapId::G4 && is_origin(z)) {
      rec["asserted"] = false;
    } else {
      const double dev = std::abs(est.estimate - 1.0);
      worst = std::max(worst, dev);
      rec["expected"] = 1.0;
      rec["asserted"] = true;
      ok = dev <= tol;
    }
    rec["pass"] = ok;
    r.pass = r.pass && ok;
    r.records.push_back(rec);
  }
  Json summary{{"record", "summary"},
               {"command", "covering"},
               {"map", to_string(c.map)},
               {"method", to_string(c.method)},
               {"centers", centers.size()}};
  if (c.map != MapId::H4) {
    summary["max_deviation_from_one"] = worst;
    summary["tol"] = tol;
  }
  summary["pass"] = r.pass;
  r.records.push_back(summary);
  return r;
}

SuiteResult identities(const RunConfig& c) {
  using namespace coderiv::poly;
  SuiteResult r;
  auto add = [&](const std::string& name, bool result, bool expected, Json extra = Json::object()) {
    Json rec{{"record", "identity"}, {"identity", name}, {"result", result}, {"expected", expected}};
    for (auto& [k, v] : extra.items()) rec[k] = v;
    rec["pass"] = result == expected;
    r.pass = r.pass && result == expected;
    r.records.push_back(rec);
  };

  const std::uint64_t seed = derive_seed(c.seed, 40);
  const auto fn = f_norm_sides();
  const auto gn = g_norm_sides();
  const auto hn = h_norm_sides();
  const double dfn = numeric_discrepancy(fn, 100, seed);
  const double dgn = numeric_discrepancy(gn, 100, seed + 1);
  const double dh = numeric_discrepancy(hn, 100, seed + 2);
  add("f_norm_numeric", dfn <= 1e-9, true, {{"max_relative_gap", dfn}});
  add("g_norm_numeric", dgn <= 1e-9, true, {{"max_relative_gap", dgn}});
  add("h_norm_numeric", dh <= 1e-9, true, {{"max_relative_gap", dh}});
  add("f_norm", fn.holds(), true, {{"lhs_terms", fn.lhs.size()}, {"rhs_terms", fn.rhs.size()}});
  add("g_norm", gn.holds(), true, {{"lhs_terms", gn.lhs.size()}, {"rhs_terms", gn.rhs.size()}});
  add("h_norm", hn.holds(), true);

  BlockCoefficients mutated;
  mutated.a2 = 2;
  add("f_norm_mutation", verify_f_norm_identity(mutated), false);
  add("g_norm_mutation", verify_g_norm_identity({}, mutated), false);
  add("h_norm_mutation", verify_h_norm_identity(2, 3), false);

  const Poly zero;
  const auto restricted = [&](const Poly& p) {
    return p.substitute(Var::y2, zero).substitute(Var::z2, zero);
  };
  const Poly y1z1_6 = Poly::var(Var::y1, 2) * Poly::var(Var::z1, 6);
  add("f_norm_restriction", restricted(fn.lhs) == y1z1_6 && restricted(fn.rhs) == y1z1_6, true);

  const Poly r2cubed = (Poly::var(Var::z3, 2) + Poly::var(Var::z4, 2)).pow(3);
  const auto drop_second = [&](const Poly& p) {
    return p.substitute(Var::y3, zero).substitute(Var::y4, zero);
  };
  add("g_norm_reduces_to_f_norm", drop_second(gn.difference()) == fn.difference() * r2cubed &&
                                     drop_second(gn.lhs) == fn.lhs * r2cubed,
      true);

  r.records.push_back(Json{{"record", "summary"}, {"command", "identities"}, {"pass", r.pass}});
  return r;
}

Json solve_json(const SolveReport& rep, const Scenario& sc) {
  Json j{{"record", "solve"},
         {"scenario", sc.name},
         {"s", rep.s},
         {"sigma", vec_json(rep.sigma)},
         {"residual", rep.residual},
         {"distance", rep.distance},
         {"dist_to_G", dist_to_G(sc, rep.s)},
         {"alpha", sc.alpha},
         {"beta", sc.beta},
         {"bound", rep.bound},
         {"bound_satisfied", rep.bound_satisfied},
         {"iterations", rep.iterations},
         {"converged", rep.converged}};
  j["failure"] = rep.failure.empty() ? Json(nullptr) : Json(rep.failure);
  return j;
}

SuiteResult solve(const RunConfig& c) {
  const Scenario& sc = *c.scenario;
  SuiteResult r;
  const SolveReport rep = solve_parametric(sc, c.s);
  Json j = solve_json(rep, sc);
  r.pass = verify_bound(rep, sc);
  j["pass"] = r.pass;
  r.records.push_back(j);
  return r;
}

SuiteResult sweep_suite(const RunConfig& c) {
  const Scenario& sc = *c.scenario;
  SuiteResult r;
  int failures = 0;
  for (const SolveReport& rep : sweep(sc, c.s_grid)) {
    Json j = solve_json(rep, sc);
    const bool ok = !rep.converged || verify_bound(rep, sc);
    if (!rep.converged) ++failures;
    j["pass"] = ok;
    r.pass = r.pass && ok;
    r.records.push_back(j);
  }
  r.records.push_back(Json{{"record", "summary"},
                           {"command", "sweep"},
                           {"scenario", sc.name},
                           {"points", c.s_grid.size()},
                           {"failures", failures},
                           {"pass", r.pass}});
  return r;
}

// --- output -------------------------------------------------------------------

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += csv_cell(v[i]);
    }
    return out;
  }
  return v.dump();
}

void write_records(const std::vector<Json>& records, Command command, Format format, std::ostream& os) {
  if (format == Format::kJson) {
    for (const Json& rec : records) os << rec.dump() << '\n';
    return;
  }
  const auto cols = csv_columns(command);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const Json& rec : records) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ',';
      if (rec.contains(cols[i])) os << csv_cell(rec[cols[i]]);
    }
    os << '\n';
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Coderivative and covering-constant verification toolkit", argv.empty() ? "coderiv" : argv[0]};
  app.footer(kCsvHelp);
  app.require_subcommand(1, 1);

  std::string map_text = "f";
  std::vector<std::string> point_texts;
  std::uint64_t seed = 0;
  std::string etas_text, method_text = "spectral", grid_text, format_text = "json";
  RunConfig cfg;
  double tol = 0.0, alpha = 0.0, s = 0.0;

  struct Sub {
    Command command;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::kVerifyJacobians, "verify-jacobians", "Compare analytic Jacobians with central differences"},
      {Command::kProbeOrigin, "probe-origin", "Probe the coderivative at the origin for a dual vector y (--point)"},
      {Command::kCovering, "covering", "Estimate covering constants at given or seeded centers"},
      {Command::kIdentities, "identities", "Check the polynomial norm identities exactly"},
      {Command::kSolve, "solve", "Solve a scenario at one parameter value"},
      {Command::kSweep, "sweep", "Solve a scenario over a parameter grid"},
  };
  std::vector<std::pair<CLI::App*, Command>> handles;
  std::vector<CLI::Option*> tol_opts, alpha_opts, seed_opts;
  for (const Sub& sub : subs) {
    CLI::App* a = app.add_subcommand(sub.name, sub.help);
    handles.emplace_back(a, sub.command);
    a->add_option("--map", map_text, "Map: f, g or h")->check(CLI::IsMember({"f", "g", "h", "F2", "G4", "H4"}));
    a->add_option("--point", point_texts, "Point x1,x2[,x3,x4]; repeatable");
    seed_opts.push_back(a->add_option("--seed", seed, "Master seed")->envname("CODERIV_SEED"));
    a->add_option("--etas", etas_text, "Comma-separated decreasing eta ladder");
    a->add_option("--y-samples", cfg.y_samples, "Dual directions per point (definitional method)");
    a->add_option("--z-samples", cfg.z_samples, "Accepted points per ball");
    a->add_option("--count", cfg.count, "Number of seeded points, centers or candidates");
    a->add_option("--method", method_text, "spectral or definitional")
        ->check(CLI::IsMember({"spectral", "definitional"}));
    a->add_option("--fd-step", cfg.fd_step, "Finite-difference step");
    tol_opts.push_back(a->add_option("--tol", tol, "Check tolerance"));
    a->add_option("--scenario", cfg.scenario_path, "Scenario file");
    a->add_option("--s", s, "Parameter value");
    a->add_option("--s-grid", grid_text, "Parameter grid a:b:step");
    alpha_opts.push_back(a->add_option("--alpha", alpha, "Override the scenario alpha"));
    a->add_option("--output", cfg.output, "Output path (default: standard output)");
    a->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    throw UsageError(e.what(), code == 0 ? 0 : 2, out.str() + err.str());
  }

  std::size_t active = 0;
  for (std::size_t i = 0; i < handles.size(); ++i) {
    if (handles[i].first->parsed()) active = i;
  }
  cfg.command = handles[active].second;

  try {
    cfg.map = parse_map_id(map_text);
    cfg.method = parse_covering_method(method_text);
  } catch (const ConfigError& e) {
    throw usage(e.what());
  }
  cfg.seed = seed;
  cfg.s = s;
  cfg.format = format_text == "csv" ? Format::kCsv : Format::kJson;
  if (tol_opts[active]->count() > 0) {
    if (!(tol > 0.0)) throw usage("--tol must be positive");
    cfg.tol = tol;
  }

  const int n = dimension(cfg.map);
  for (const std::string& text : point_texts) {
    const auto v = parse_list(text, ',', "--point");
    if (static_cast<int>(v.size()) != n) {
      throw usage("--point '" + text + "' needs " + std::to_string(n) + " coordinates for map " +
                  std::string(to_string(cfg.map)));
    }
    cfg.points.push_back(to_vec(v));
  }
  if (!etas_text.empty()) {
    cfg.etas = parse_list(etas_text, ',', "--etas");
    for (std::size_t i = 0; i < cfg.etas.size(); ++i) {
      if (!(cfg.etas[i] > 0.0) || (i > 0 && !(cfg.etas[i] < cfg.etas[i - 1]))) {
        throw usage("--etas must be positive and strictly decreasing");
      }
    }
    if (cfg.etas.empty()) throw usage("--etas is empty");
  }
  if (cfg.y_samples < 32 || cfg.z_samples < 32) throw usage("--y-samples and --z-samples must be at least 32");
  if (cfg.count < 0) throw usage("--count must be nonnegative");
  if (!(cfg.fd_step > 0.0)) throw usage("--fd-step must be positive");
  if (cfg.command == Command::kProbeOrigin && cfg.map == MapId::H4) throw usage("probe-origin supports f and g");

  if (!grid_text.empty()) {
    const auto g = parse_list(grid_text, ':', "--s-grid");
    if (g.size() != 3) throw usage("--s-grid expects a:b:step");
    try {
      cfg.s_grid = make_grid(g[0], g[1], g[2]);
    } catch (const ConfigError& e) {
      throw usage(std::string("--s-grid: ") + e.what());
    }
  }

  if (cfg.command == Command::kSolve || cfg.command == Command::kSweep) {
    if (cfg.scenario_path.empty()) throw usage("--scenario is required");
    if (cfg.command == Command::kSweep && cfg.s_grid.empty()) throw usage("--s-grid is required");
    if (alpha_opts[active]->count() > 0) cfg.alpha = alpha;
  }
  return cfg;
}

namespace {

void load_config_scenario(RunConfig& cfg) {
  if (cfg.scenario || cfg.scenario_path.empty()) return;
  Scenario sc = load_scenario(cfg.scenario_path);
  if (cfg.alpha) {
    if (!(sc.beta < *cfg.alpha)) throw UsageError("beta must be below alpha", 2, "error: --alpha must exceed the scenario beta\n");
    if (!(*cfg.alpha < 1.0)) throw UsageError("alpha must be below 1", 2, "error: --alpha must be below 1\n");
    sc.alpha = *cfg.alpha;
  }
  cfg.scenario = sc;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = config;
    load_config_scenario(cfg);
    SuiteResult result;
    switch (cfg.command) {
      case Command::kVerifyJacobians:
        result = verify_jacobians(cfg);
        break;
      case Command::kProbeOrigin:
        result = probe_origin(cfg);
        break;
      case Command::kCovering:
        result = covering(cfg);
        break;
      case Command::kIdentities:
        result = identities(cfg);
        break;
      case Command::kSolve:
        result = solve(cfg);
        break;
      case Command::kSweep:
        result = sweep_suite(cfg);
        break;
    }
    if (cfg.output.empty()) {
      write_records(result.records, cfg.command, cfg.format, out);
      out.flush();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file " << cfg.output << '\n';
        return 3;
      }
      write_records(result.records, cfg.command, cfg.format, file);
      file.flush();
      if (!file) {
        err << "error: failed writing " << cfg.output << '\n';
        return 3;
      }
    }
    return result.pass ? 0 : 1;
  } catch (const UsageError& e) {
    err << e.message();
    return e.exit_code();
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << " after " << e.trace().size() - 1 << " Newton steps; last residual "
        << e.trace().back().residual << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argv);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.message();
    return e.exit_code();
  }
  return run(cfg, out, err);
}

}  // namespace coderiv::cli

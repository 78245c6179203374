// s2re: relative equilibria of three bodies on a sphere.
//
// Exit codes: 0 success with solutions, 2 success without any (or a
// verification that did not pass), 1 usage or domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "s2re/dynamics.hpp"
#include "s2re/equator.hpp"
#include "s2re/euler_limit.hpp"
#include "s2re/io.hpp"
#include "s2re/meridian.hpp"

namespace {

using namespace s2re;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEmpty = 2;

struct RunConfig {
  std::string masses = "1,1,1";
  double radius = 1.0;
  std::string potential = "cotangent";
  double tol_residual = kDefaultResidualTolerance;
  double tol_root = 1e-13;
  double tol_boundary = 1e-8;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 12345;
};

MassTriple parse_masses(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw std::invalid_argument("cannot read mass '" + item + "'");
    v.push_back(d);
  }
  if (v.size() != 3) throw std::invalid_argument("--masses needs exactly three values m1,m2,m3");
  return {v[0], v[1], v[2]};
}

PotentialPtr make_potential(const RunConfig& cfg) {
  const SphereRadius r(cfg.radius);
  if (cfg.potential == "cotangent") return make_cotangent(r);
  if (cfg.potential == "repulsive") return make_repulsive(make_cotangent(r));
  throw std::invalid_argument("unknown potential '" + cfg.potential + "'");
}

void check_tolerances(const RunConfig& cfg) {
  for (double t : {cfg.tol_residual, cfg.tol_root, cfg.tol_boundary})
    if (!(t > 0.0)) throw std::invalid_argument("tolerances must be > 0");
}

MeridianOptions meridian_options(const RunConfig& cfg) {
  check_tolerances(cfg);
  MeridianOptions opt;
  opt.radius = SphereRadius(cfg.radius);
  opt.potential = make_potential(cfg);
  opt.residual_tol = cfg.tol_residual;
  opt.scan.root_tol = cfg.tol_root;
  opt.scan.boundary_exclusion = cfg.tol_boundary;
  return opt;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0 && hi > 0)) throw std::invalid_argument("log grid needs positive bounds");
  std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

int cmd_equator(const RunConfig& cfg) {
  const MassTriple m = parse_masses(cfg.masses);
  if (cfg.potential != "cotangent" && cfg.potential != "repulsive")
    throw std::invalid_argument("equator solutions exist in closed form for the cotangent potential only");
  const EquatorSolution sol = equator_closed_form(m, SphereRadius(cfg.radius));
  if (cfg.format == "csv")
    emit(cfg, equator_csv(sol));
  else
    emit(cfg, to_json(sol).dump(2));
  if (!sol.exists) {
    std::cerr << "no equator relative equilibrium: " << to_string(sol.existence.region)
              << ", violates " << sol.existence.inequality() << '\n';
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_meridian(const RunConfig& cfg, double a) {
  const MassTriple m = parse_masses(cfg.masses);
  const MeridianSearch s = find_meridian_rotators(a, m, meridian_options(cfg));
  if (cfg.format == "csv")
    emit(cfg, meridian_csv(s.solutions, m));
  else
    emit(cfg, to_json(s.solutions).dump(2));
  for (const auto& r : s.rejected)
    std::cerr << "rejected x = " << format_double(r.x) << ": " << r.reason << '\n';
  return s.solutions.empty() ? kExitEmpty : kExitOk;
}

struct SweepArgs {
  double a_min = 0.05, a_max = std::numbers::pi - 0.05;
  int a_steps = 20;
  double nu_min = 0.1, nu_max = 10.0;
  int nu_steps = 50;
  bool nu_linear = false;
  std::vector<double> a_list, nu1_list, nu2_list;
};

int cmd_sweep(const RunConfig& cfg, const SweepArgs& args) {
  const std::vector<double> as =
      args.a_list.empty() ? linspace(args.a_min, args.a_max, args.a_steps) : args.a_list;
  auto nu_grid = [&](const std::vector<double>& explicit_list) {
    if (!explicit_list.empty()) return explicit_list;
    return args.nu_linear ? linspace(args.nu_min, args.nu_max, args.nu_steps)
                          : logspace(args.nu_min, args.nu_max, args.nu_steps);
  };
  const std::vector<double> nu1 = nu_grid(args.nu1_list), nu2 = nu_grid(args.nu2_list);
  if (as.empty() || nu1.empty() || nu2.empty()) throw std::invalid_argument("empty sweep grid");
  for (double a : as)
    if (!(a > 0 && a < std::numbers::pi)) throw std::invalid_argument("a values must lie in (0, pi)");
  const auto rows = sweep_counts(as, nu1, nu2, meridian_options(cfg));
  emit(cfg, sweep_csv(rows));
  return kExitOk;
}

struct VerifyArgs {
  std::string file;
  double omega = 0.0;
  std::size_t steps = 20000;
  double fixed_time = 10.0;
  double tol_drift = 1e-6;
  double perturb = 0.0;
  bool integrate = true;
  bool inertial = false;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& args) {
  check_tolerances(cfg);
  const MassTriple m = parse_masses(cfg.masses);
  const PotentialPtr pot = make_potential(cfg);
  std::ifstream f(args.file);
  if (!f) throw std::runtime_error("cannot read " + args.file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("cannot parse ") + args.file + ": " + e.what());
  }
  std::vector<VerifyItem> items = parse_verify_items(doc, SphereRadius(cfg.radius), args.omega);

  if (args.perturb != 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-args.perturb, args.perturb);
    for (auto& it : items)
      for (auto& p : it.candidate.points) p.theta += u(rng);
  }

  nlohmann::json report = nlohmann::json::array();
  bool all_pass = !items.empty();
  for (const auto& it : items) {
    nlohmann::json r;
    r["label"] = it.label;
    const double res = re_residuals(it.candidate, m, *pot).max_norm();
    const SphericalState st = rotating_state(it.candidate);
    const AngularMomentum c = angular_momentum(st, m);
    r["residual"] = res;
    r["cx"] = c.cx;
    r["cy"] = c.cy;
    r["cz"] = c.cz;
    bool pass = res < cfg.tol_residual;
    if (args.integrate) {
      const double w = it.candidate.omega;
      const double t_end = w != 0.0 ? 2.0 * std::numbers::pi / std::abs(w) : args.fixed_time;
      IntegrateOptions io;
      io.frame_rate = args.inertial ? 0.0 : w;
      const Trajectory tr =
          integrate(st, m, *pot, t_end, t_end / static_cast<double>(args.steps), io);
      r["period"] = t_end;
      r["sigma_drift"] = tr.drift.max_sigma_drift;
      r["energy_drift"] = tr.drift.max_energy_drift;
      r["angular_momentum_drift"] = tr.drift.relative_angular_momentum_drift();
      if (tr.error) r["integration_error"] = *tr.error;
      pass = pass && tr.complete() && tr.drift.max_sigma_drift < args.tol_drift;
    }
    r["pass"] = pass;
    all_pass = all_pass && pass;
    report.push_back(r);
  }
  emit(cfg, report.dump(2));
  return all_pass ? kExitOk : kExitEmpty;
}

int cmd_euler(const RunConfig& cfg, double r21, const std::vector<double>& radii) {
  const MassTriple m = parse_masses(cfg.masses);
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("--R-list must be ascending");
  const EulerLimitReport rep = euler_limit_check(m, r21, radii);
  emit(cfg, euler_limit_csv(rep));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative equilibria of three bodies on a sphere (cotangent potential)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--masses", cfg.masses, "m1,m2,m3")->capture_default_str();
    sub->add_option("--radius", cfg.radius, "sphere radius R")->capture_default_str();
    sub->add_option("--potential", cfg.potential, "cotangent | repulsive")
        ->capture_default_str();
    sub->add_option("--tol-residual", cfg.tol_residual, "residual acceptance tolerance")
        ->capture_default_str();
    sub->add_option("--tol-root", cfg.tol_root, "bisection width in x")->capture_default_str();
    sub->add_option("--tol-boundary", cfg.tol_boundary, "exclusion zone at region ends")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized perturbations")
        ->capture_default_str();
  };

  auto* eq = app.add_subcommand("equator", "closed-form rotator on the equator");
  add_common(eq);

  double a = 0.0;
  auto* mer = app.add_subcommand("meridian", "rotators on a rotating meridian for given a");
  add_common(mer);
  mer->add_option("--a", a, "theta2 - theta1 in (0, pi), radians")->required();

  SweepArgs sw;
  auto* swp = app.add_subcommand("sweep", "count rotators over a grid of (a, nu1, nu2)");
  add_common(swp);
  swp->add_option("--a-min", sw.a_min)->capture_default_str();
  swp->add_option("--a-max", sw.a_max)->capture_default_str();
  swp->add_option("--a-steps", sw.a_steps)->capture_default_str();
  swp->add_option("--nu-min", sw.nu_min)->capture_default_str();
  swp->add_option("--nu-max", sw.nu_max)->capture_default_str();
  swp->add_option("--nu-steps", sw.nu_steps)->capture_default_str();
  swp->add_flag("--nu-linear", sw.nu_linear, "linear instead of logarithmic nu spacing");
  swp->add_option("--a-list", sw.a_list, "explicit a values")->delimiter(',');
  swp->add_option("--nu1-list", sw.nu1_list, "explicit nu1 values")->delimiter(',');
  swp->add_option("--nu2-list", sw.nu2_list, "explicit nu2 values")->delimiter(',');

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check solutions against the raw equations of motion");
  add_common(ver);
  ver->add_option("file", va.file, "JSON from the meridian or equator command")->required();
  ver->add_option("--omega", va.omega, "rate for entries without omega_squared")
      ->capture_default_str();
  ver->add_option("--steps", va.steps, "integration steps per period")->capture_default_str();
  ver->add_option("--fixed-time", va.fixed_time, "integration time for fixed points")
      ->capture_default_str();
  ver->add_option("--tol-drift", va.tol_drift, "allowed arc-angle drift")->capture_default_str();
  ver->add_option("--perturb", va.perturb, "random colatitude perturbation amplitude")
      ->capture_default_str();
  ver->add_flag("!--no-integrate", va.integrate, "skip the integrated period");
  ver->add_flag("--inertial", va.inertial, "step in the inertial frame, not the co-rotating one");

  double r21 = 1.0;
  std::vector<double> radii = {1e2, 1e3, 1e4};
  auto* eul = app.add_subcommand("euler-limit", "convergence of g to the Euler quintic");
  add_common(eul);
  eul->add_option("--r21", r21, "arc length between bodies 1 and 2")->capture_default_str();
  eul->add_option("--R-list", radii, "ascending radii")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*eq) return cmd_equator(cfg);
    if (*mer) return cmd_meridian(cfg, a);
    if (*swp) return cmd_sweep(cfg, sw);
    if (*ver) return cmd_verify(cfg, va);
    if (*eul) return cmd_euler(cfg, r21, radii);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

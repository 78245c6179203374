// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are the contract values; nothing here is tuned to the
// results.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "s2re/dynamics.hpp"
#include "s2re/equator.hpp"
#include "s2re/euler_limit.hpp"
#include "s2re/families.hpp"
#include "s2re/meridian.hpp"

using namespace s2re;

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

// Every relative equilibrium accepted along the way, re-checked by the
// property suite.
struct Accepted {
  std::string label;
  MassTriple masses;
  RECandidate candidate;
  std::optional<double> omega_squared;  // empty for fixed points
};
std::vector<Accepted> g_accepted;

void accept_meridian(const std::string& label, const MassTriple& m, const MeridianSolution& s) {
  g_accepted.push_back({label, m, s.candidate(), s.omega_squared});
  g_accepted.push_back({label + "-alt", m, s.candidate_alt(), s.omega_squared});
}

std::vector<MassTriple> random_masses(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  std::vector<MassTriple> out;
  while (static_cast<int>(out.size()) < n) {
    MassTriple m(u(rng), u(rng), u(rng));
    if (!m.all_equal(1e-6)) out.push_back(m);
  }
  return out;
}

// 1: closed-form counts at a = pi/2 against the scan.
Outcome table_counts() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::array<std::array<double, 3>, 5> masses{
      {{1, 6, 1}, {1, 5, 1}, {1, 1, 1}, {5, 1, 1}, {6, 1, 1}}};
  const std::array<int, 5> want{4, 3, 2, 3, 4};
  std::ostringstream got;
  for (int i = 0; i < 5; ++i) {
    const MassTriple m(masses[i][0], masses[i][1], masses[i][2]);
    const RegionCounts closed = count_pi_over_2(m.nu1() - m.nu2());
    const MeridianSearch scan = find_meridian_rotators(kPi / 2, m);
    got << (i ? "," : "") << closed.total() << "/" << scan.solutions.size();
    o.require(closed.total() == want[i], "closed form total wrong for d=" +
                                             std::to_string(m.nu1() - m.nu2()));
    o.require(scan.counts_per_region() == closed.per_region,
              "scan disagrees with closed form at index " + std::to_string(i));
    for (const auto& s : scan.solutions) accept_meridian("pi/2 #" + std::to_string(i), m, s);
  }
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail << "closed/scan totals " << got.str() << ", " << t << " s";
  return o;
}

// 2: a = pi/6, nu = (3, 2).
Outcome six_solutions() {
  Outcome o;
  const MassTriple m = MassTriple::from_ratios(3, 2);
  const MeridianSearch res = find_meridian_rotators(kPi / 6, m);
  const auto c = res.counts_per_region();
  o.require(res.solutions.size() == 6, std::to_string(res.solutions.size()) + " rotators");
  o.require(c == (std::array<int, 4>{1, 2, 1, 2}), "region distribution");
  for (const auto& s : res.solutions) accept_meridian("pi/6", m, s);

  const double a = kPi / 6, r3 = std::sqrt(3.0);
  const auto p2 = GFunctionParams::for_region(a, 3, 2, Region::II);
  const auto p4 = GFunctionParams::for_region(a, 3, 2, Region::IV);
  const std::array<std::pair<double, double>, 6> got{{
      {g_function(kPi / 6, p2), -3 * r3 / 32},
      {g_function(kPi / 2, p2), 5 * r3 / 16},
      {g_function(kPi, p2), -r3 / 8},
      {g_function(7 * kPi / 6, p4), 3 * r3 / 32},
      {g_function(7 * kPi / 4, p4), -5 * (5 + r3) / 32},
      {g_function(2 * kPi, p4), r3 / 8},
  }};
  double worst = 0;
  for (const auto& [v, w] : got) worst = std::max(worst, std::abs(v - w));
  o.require(worst <= 1e-12, "g sample error " + std::to_string(worst));
  if (o.pass) o.detail << "I:1 II:2 III:1 IV:2, max g error " << worst;
  return o;
}

// 3: a = pi/4, nu = (3, 2).
Outcome two_solutions() {
  Outcome o;
  const MassTriple m = MassTriple::from_ratios(3, 2);
  const double a = kPi / 4;
  o.require(m.nu1() * std::sin(2 * a) > 1 && m.nu2() * std::sin(2 * a) > 1,
            "nu_k sin(2a) > 1 does not hold");
  const MeridianSearch res = find_meridian_rotators(a, m);
  o.require(res.solutions.size() == 2, std::to_string(res.solutions.size()) + " rotators");
  for (const auto& s : res.solutions) accept_meridian("pi/4", m, s);
  if (o.pass) o.detail << "2 rotators, nu_k sin 2a = 3, 2";
  return o;
}

// 4: special isosceles shape.
Outcome isosceles_exact() {
  Outcome o;
  const double a = isosceles_special_angle();
  const double k = 16.0 / 7.0 * std::sqrt((13 + 16 * std::sqrt(2.0)) / 7);
  double worst = 0;
  for (const auto& m : random_masses(10, 101)) {
    const auto sols = isosceles_rotators(m, a);
    const MeridianSolution* hit = nullptr;
    for (const auto& s : sols)
      if (std::abs(s.shape.x() - a / 2) < 1e-12) hit = &s;
    if (!hit) {
      o.require(false, "x = a/2 not found");
      continue;
    }
    o.require(hit->s == 1, "s != +1");
    o.require(hit->omega_squared.has_value(), "fixed point reported");
    if (!hit->omega_squared) continue;
    const double rel = std::abs(*hit->omega_squared / (k * hit->amplitude) - 1);
    worst = std::max(worst, rel);
    accept_meridian("isosceles", m, *hit);
  }
  o.require(worst <= 1e-10, "relative error " + std::to_string(worst));
  if (o.pass) o.detail << "10 triples, max rel error " << worst;
  return o;
}

// 5: equilateral family.
Outcome equilateral() {
  Outcome o;
  const auto pot = make_cotangent();
  double worst_res = 0, worst_w = 0;
  for (const auto& m : random_masses(10, 202)) {
    const MeridianSolution s = equilateral_rotator(m, pot);
    o.require(s.s == -1, "s != -1");
    o.require(s.omega_squared.has_value(), "fixed point for unequal masses");
    if (!s.omega_squared) continue;
    const double want = -4 * s.amplitude * pot->u_prime(3.0);
    worst_w = std::max(worst_w, std::abs(*s.omega_squared / want - 1));
    worst_res = std::max({worst_res, re_residuals(s.candidate(), m, *pot).max_norm(),
                          re_residuals(s.candidate_alt(), m, *pot).max_norm()});
    accept_meridian("equilateral", m, s);
  }
  o.require(worst_res < 1e-10, "residual " + std::to_string(worst_res));
  o.require(worst_w < 1e-10, "omega^2 rel error " + std::to_string(worst_w));
  const MassTriple eq(1, 1, 1);
  const MeridianSolution f = equilateral_rotator(eq, pot);
  o.require(f.fixed_point(), "equal masses not a fixed point");
  if (f.fixed_point()) accept_meridian("equilateral-fixed", eq, f);
  if (o.pass)
    o.detail << "max residual " << worst_res << ", omega^2 rel error " << worst_w
             << ", equal masses fixed point";
  return o;
}

// 6: equator closed forms.
Outcome equator_values() {
  Outcome o;
  const auto pot = make_cotangent();
  const EquatorSolution a = solve_equator(MassTriple(1, 1, 1));
  const EquatorSolution b = solve_equator(MassTriple(1, 1, 4));
  auto near = [&](double v, double w, const char* what) {
    o.require(std::abs(v - w) <= 1e-12, std::string(what) + " off by " +
                                            std::to_string(std::abs(v - w)));
  };
  near(std::abs(a.dphi_12), 2 * kPi / 3, "equal-mass dphi_12");
  near(std::abs(a.dphi_23), 2 * kPi / 3, "equal-mass dphi_23");
  near(std::abs(a.dphi_31), 2 * kPi / 3, "equal-mass dphi_31");
  near(a.rho, std::sqrt(3.0) / 2, "equal-mass rho");
  near(a.neg_potential_energy, std::sqrt(3.0), "equal-mass -V");
  near(std::cos(b.dphi_12), -7.0 / 8.0, "(1,1,4) cos dphi_12");
  near(b.rho, std::sqrt(15.0) / 8, "(1,1,4) rho");
  near(b.neg_potential_energy, std::sqrt(15.0), "(1,1,4) -V");
  double worst = 0;
  for (const auto& [sol, m] : {std::pair{a, MassTriple(1, 1, 1)}, std::pair{b, MassTriple(1, 1, 4)}})
    for (double w : {0.0, 1.0, 2.0}) {
      const RECandidate c = sol.candidate(w);
      worst = std::max(worst, re_residuals(c, m, *pot).max_norm());
      if (w != 0.0) g_accepted.push_back({"equator", m, c, w * w});
    }
  o.require(worst < 1e-12, "residual " + std::to_string(worst));
  if (o.pass) o.detail << "max residual " << worst << " over omega in {0,1,2}";
  return o;
}

// 7: approach to the antipodal boundary.
Outcome antipodal_limit() {
  Outcome o;
  const AntipodalScan scan = antipodal_limit_scan(default_antipodal_path(), 400);
  const auto& last = scan.rows.back().solution;
  o.require(scan.tail_monotone, "-V not strictly decreasing after its peak");
  o.require(last.neg_potential_energy < 1e-8, "-V at boundary " +
                                                  std::to_string(last.neg_potential_energy));
  const double e23 = std::abs(std::abs(last.dphi_23) - kPi);
  const double e31 = std::abs(std::abs(last.dphi_31) - kPi);
  o.require(e23 <= 1e-6 && e31 <= 1e-6, "dphi not at pi");
  if (o.pass)
    o.detail << "-V decreasing from s=" << scan.rows[scan.tail_start].s << " to "
             << last.neg_potential_energy << ", |dphi-pi| " << std::max(e23, e31);
  return o;
}

// 8: flat-space limit.
Outcome euler_limit() {
  Outcome o;
  const std::vector<double> radii{1e2, 1e3, 1e4};
  const EulerLimitReport gen = euler_limit_check(MassTriple(1.3, 0.8, 2.1), 1.0, radii);
  const EulerLimitReport eq = euler_limit_check(MassTriple(1, 1, 1), 1.0, radii);
  for (const auto* r : {&gen, &eq}) {
    o.require(r->order.has_value(), "no order estimate");
    if (r->order) o.require(std::abs(*r->order - 2.0) <= 0.2, "order " + std::to_string(*r->order));
    for (std::size_t i = 1; i < r->rows.size(); ++i)
      o.require(r->rows[i].max_coeff_deviation < r->rows[i - 1].max_coeff_deviation,
                "coefficient deviation not shrinking");
  }
  o.require(std::abs(eq.quintic_root - 1.0) < 1e-12, "equal-mass quintic root != 1");
  // Equal masses keep the symmetric root lambda = 1 at every R, so only
  // closeness is checked there; the generic triple must converge.
  double eq_dev = 0;
  bool roots = true;
  for (const auto& row : eq.rows) {
    roots = roots && row.root_lambda.has_value();
    eq_dev = std::max(eq_dev, row.root_deviation);
  }
  o.require(roots && eq_dev < 1e-9, "equal-mass meridian root not at 1");
  for (std::size_t i = 0; i < gen.rows.size(); ++i) {
    o.require(gen.rows[i].root_lambda.has_value(), "generic meridian root missing");
    if (i > 0)
      o.require(gen.rows[i].root_deviation < gen.rows[i - 1].root_deviation,
                "generic root not converging");
  }
  if (o.pass)
    o.detail << "order " << *gen.order << " (generic), " << *eq.order
             << " (equal); equal-mass root within " << eq_dev << " of 1, generic root deviation "
             << gen.rows.back().root_deviation << " at R=1e4";
  return o;
}

// 9: closed-form exceptional shapes.
Outcome exceptional_cases() {
  Outcome o;
  const auto pot = make_cotangent();
  double worst = 0;
  for (double nu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    for (auto which : {ExceptionalCase::Case2, ExceptionalCase::Case3}) {
      // The equalities do not involve the remaining mass; pick it off 1.
      const MassTriple m = which == ExceptionalCase::Case2 ? MassTriple(nu, 0.7, 1.0)
                                                           : MassTriple(1.0, nu, 1.0);
      const int j = which == ExceptionalCase::Case2 ? 1 : 2;
      for (const auto& b : exceptional_case_angles(which, nu)) {
        const PairQuantities pq = pair_quantities(m, b.shape, *pot, SphereRadius{});
        worst = std::max({worst, std::abs(pq.G[0] - pq.G[j]), std::abs(pq.F[0] - pq.F[j])});
      }
    }
  }
  o.require(worst <= 1e-12, "equality error " + std::to_string(worst));
  o.require(case4_fixed_point(MassTriple(2, 2, 2)).has_value(), "no Case4 for equal masses");
  int spurious = 0;
  for (const auto& m : random_masses(20, 303)) spurious += case4_fixed_point(m).has_value();
  spurious += case4_fixed_point(MassTriple(1, 1, 1 + 1e-9)).has_value();
  o.require(spurious == 0, "Case4 for unequal masses");
  if (o.pass) o.detail << "max G/F mismatch " << worst << ", Case4 only for equal masses";
  return o;
}

// 10: invariances and integration over one period.
Outcome property_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto pot = make_cotangent();
  const auto rep = make_repulsive(pot);
  const double tol = kDefaultResidualTolerance;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> turn(0, 2 * kPi);

  // Branch symmetry and repulsive duality on meridian solutions.
  for (const auto& [a, m] : {std::pair{kPi / 6, MassTriple::from_ratios(3, 2)},
                             std::pair{kPi / 4, MassTriple::from_ratios(3, 2)},
                             std::pair{1.1, MassTriple(0.7, 2.3, 1.4)}}) {
    MeridianOptions ro;
    ro.potential = rep;
    const auto att = find_meridian_rotators(a, m);
    const auto rp = find_meridian_rotators(a, m, ro);
    o.require(att.solutions.size() == rp.solutions.size(), "repulsive count differs");
    for (std::size_t i = 0; i < std::min(att.solutions.size(), rp.solutions.size()); ++i) {
      const auto& p = att.solutions[i];
      const auto& q = rp.solutions[i];
      o.require(std::abs(p.shape.x() - q.shape.x()) < 1e-9 && p.s == -q.s,
                "repulsive shape or branch mismatch");
      if (p.omega_squared && q.omega_squared)
        o.require(std::abs(*p.omega_squared - *q.omega_squared) <= 1e-9 * *p.omega_squared,
                  "repulsive omega^2 mismatch");
      if (!p.omega_squared) continue;
      // Quarter turn of every colatitude: the other branch, rate formally imaginary.
      std::array<SpherePoint, 3> shifted = p.candidate().points;
      for (auto& pt : shifted) pt.theta += kPi / 2;
      const double r = re_residuals(shifted, -*p.omega_squared, SphereRadius{}, m, *pot).max_norm();
      o.require(r < tol, "branch symmetry residual " + std::to_string(r));
      const auto t_other = shape_to_configurations(m, p.shape, -p.s);
      const double d = std::remainder(2 * (t_other.theta[0] - p.theta[0]) - kPi, 2 * kPi);
      o.require(std::abs(d) < 1e-10, "s flip is not a quarter turn");
    }
  }

  double worst_rot = 0, worst_anti = 0, worst_rep = 0;
  for (const auto& acc : g_accepted) {
    const double base = re_residuals(acc.candidate, acc.masses, *pot).max_norm();
    o.require(base < tol, acc.label + " residual " + std::to_string(base));

    RECandidate anti = acc.candidate;
    for (auto& pt : anti.points) {
      pt.theta = kPi - pt.theta;
      pt.phi += kPi;
    }
    worst_anti = std::max(worst_anti, re_residuals(anti, acc.masses, *pot).max_norm());

    RECandidate rot = acc.candidate;
    const double dphi = turn(rng);
    for (auto& pt : rot.points) pt.phi += dphi;
    worst_rot = std::max(worst_rot, re_residuals(rot, acc.masses, *pot).max_norm());

    // The equator solution carries over to the repulsive potential unchanged.
    if (acc.label == "equator")
      worst_rep = std::max(worst_rep, re_residuals(acc.candidate, acc.masses, *rep).max_norm());
  }
  o.require(worst_anti < tol, "antipodal map residual " + std::to_string(worst_anti));
  o.require(worst_rot < tol, "rotated residual " + std::to_string(worst_rot));
  o.require(worst_rep < tol, "repulsive equator residual " + std::to_string(worst_rep));

  double worst_c = 0, worst_sigma = 0;
  for (const auto& acc : g_accepted) {
    const double w = acc.candidate.omega;
    const double t_end = w != 0.0 ? 2 * kPi / w : 10.0;
    IntegrateOptions io;
    io.frame_rate = w;
    const Trajectory tr = integrate(rotating_state(acc.candidate), acc.masses, *pot, t_end,
                                    t_end / 20000.0, io);
    o.require(tr.complete(), acc.label + " integration stopped");
    worst_c = std::max(worst_c, tr.drift.relative_angular_momentum_drift());
    worst_sigma = std::max(worst_sigma, tr.drift.max_sigma_drift);
  }
  o.require(worst_c < 1e-8, "c drift " + std::to_string(worst_c));
  o.require(worst_sigma < 1e-6, "sigma drift " + std::to_string(worst_sigma));

  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (o.pass)
    o.detail << g_accepted.size() << " RE; antipodal " << worst_anti << ", rotated " << worst_rot
             << ", c drift " << worst_c << ", sigma drift " << worst_sigma << ", " << t << " s";
  return o;
}

// 11: bounded count over a 50 x 50 x 20 grid. Evidence, not proof.
Outcome sweep_bound() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<double> as(20), nus(50);
  for (int i = 0; i < 20; ++i) as[i] = 0.05 + (kPi - 0.1) * i / 19.0;
  for (int i = 0; i < 50; ++i) nus[i] = std::pow(10.0, -1.0 + 2.0 * i / 49.0);
  const auto rows = sweep_counts(as, nus, nus);
  int max_count = 0, max_with_rejected = 0, rejected = 0;
  for (const auto& r : rows) {
    max_count = std::max(max_count, r.total());
    max_with_rejected = std::max(max_with_rejected, r.total() + r.rejected);
    rejected += r.rejected;
  }
  o.require(rows.size() == 50u * 50u * 20u, "grid size " + std::to_string(rows.size()));
  o.require(max_count <= 6, "count " + std::to_string(max_count) + " exceeds 6");
  if (o.pass)
    o.detail << rows.size() << " points, max count " << max_count << " (" << max_with_rejected
             << " counting " << rejected << " rejected roots), " << seconds_since(t0) << " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"counts at a = pi/2", table_counts},
      {"six-solution example", six_solutions},
      {"two-solution example", two_solutions},
      {"isosceles exact values", isosceles_exact},
      {"equilateral family", equilateral},
      {"equator closed form", equator_values},
      {"antipodal limit", antipodal_limit},
      {"flat-space limit", euler_limit},
      {"exceptional closed forms", exceptional_cases},
      {"property suite", property_suite},
      {"sweep count bound", sweep_bound},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str(std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

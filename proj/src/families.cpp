#include "s2re/families.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace s2re {

namespace {
constexpr double kPi = std::numbers::pi;
}

Shape equilateral_shape() { return Shape(2.0 * kPi / 3.0, 4.0 * kPi / 3.0); }

MeridianSolution equilateral_rotator(const MassTriple& masses, PotentialPtr pot, SphereRadius r) {
  MeridianOptions opt;
  opt.potential = std::move(pot);
  opt.radius = r;
  ShapeResolution res = resolve_shape(masses, equilateral_shape(), opt);
  if (!res.solution) throw std::runtime_error("equilateral shape rejected: " + res.reason);
  return *res.solution;
}

double isosceles_special_angle() { return std::acos(0.5 * (std::numbers::sqrt2 - 1.0)); }

double isosceles_special_ratio() {
  return 8.0 / 7.0 * std::sqrt((13.0 + 16.0 * std::numbers::sqrt2) / 7.0);
}

std::vector<MeridianSolution> isosceles_rotators(const MassTriple& masses, double a,
                                                 const MeridianOptions& options) {
  if (!(a > 0.0 && a < kPi)) throw std::invalid_argument("a = theta2 - theta1 must lie in (0, pi)");
  const double c = std::cos(a);
  const bool equal12 = std::abs(masses[0] - masses[1]) <= 1e-12 * std::max(masses[0], masses[1]);
  // Unequal m1, m2 leave (nu1 - nu2) times these factors.
  const bool smaller = equal12 || std::abs(4.0 * c * c + 4.0 * c - 1.0) <= kIsoscelesAngleTolerance;
  const bool larger = equal12 || std::abs(2.0 * c + 1.0) <= kIsoscelesAngleTolerance;

  std::vector<MeridianSolution> out;
  auto take = [&](double x) {
    ShapeResolution r = resolve_shape(masses, Shape(a, x), options);
    if (r.solution) out.push_back(*r.solution);
  };
  if (smaller) take(0.5 * a);
  if (larger) take(0.5 * a + kPi);
  return out;
}

std::array<ExceptionalBranch, 2> exceptional_case_angles(ExceptionalCase which, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("mass ratio must be > 0");
  const double q = (1.0 + nu) * (1.0 + nu * nu);
  const double p = 1.0 + nu + nu * nu;
  const double c12 = std::sqrt(1.0 / q);
  const double s12 = std::sqrt(nu * p / q);
  const double so = std::sqrt(p / q);
  const double co = nu * std::sqrt(nu) * c12;

  std::array<ExceptionalBranch, 2> out;
  for (int b = 0; b < 2; ++b) {
    const double sign = b == 0 ? 1.0 : -1.0;
    ExceptionalBranch& e = out[b];
    e.sin12 = s12;
    e.cos12 = sign * c12;
    e.sin_other = so;
    e.cos_other = sign * co;
    // Reflecting theta -> -theta turns theta_1 - theta_2 = t12 into a = t12.
    const double t12 = std::atan2(e.sin12, e.cos12);
    const double to = std::atan2(e.sin_other, e.cos_other);
    e.shape = which == ExceptionalCase::Case2 ? Shape(t12, t12 + to) : Shape(t12, 2.0 * kPi - to);
  }
  return out;
}

std::optional<Shape> case4_fixed_point(const MassTriple& masses, double rel_tol) {
  if (!masses.all_equal(rel_tol)) return std::nullopt;
  return equilateral_shape();
}

RegionCounts count_pi_over_2(double d, double tol) {
  RegionCounts c;
  c.per_region[0] = 1;
  c.per_region[2] = 1;
  c.per_region[1] = std::abs(d - 4.0) <= tol ? 1 : (d > 4.0 ? 2 : 0);
  c.per_region[3] = std::abs(d + 4.0) <= tol ? 1 : (d < -4.0 ? 2 : 0);
  return c;
}

}  // namespace s2re

// Closed-form rotator families on the rotating meridian: the equilateral
// triangle, the isosceles shapes, the exceptional shapes where one G
// difference vanishes, the equal-mass fixed point and the a = pi/2 counts.

#ifndef S2RE_FAMILIES_HPP
#define S2RE_FAMILIES_HPP

#include <array>
#include <optional>
#include <vector>

#include "s2re/meridian.hpp"

namespace s2re {

/// Shape with all three pair separations equal to 2 pi / 3.
Shape equilateral_shape();

/// Unequal masses: s = -1 and omega^2 = -4 A U'(3 R^2). Equal masses: a
/// fixed point with A = 0, where only the shape carries meaning.
MeridianSolution equilateral_rotator(const MassTriple& masses, PotentialPtr pot,
                                     SphereRadius r = SphereRadius{});

/// a with cos a = (sqrt(2) - 1) / 2, where x = a / 2 is a rotator for every
/// choice of masses.
double isosceles_special_angle();

/// (F_12 - F_23) / (G_12 - G_23) on the special shape, R = 1 and the
/// cotangent potential: (8/7) sqrt((13 + 16 sqrt 2) / 7).
double isosceles_special_ratio();

constexpr double kIsoscelesAngleTolerance = 1e-10;

/// Isosceles rotators for a given a. With m1 = m2 both x = a/2 and
/// x = a/2 + pi; otherwise x = a/2 only at the special angle and x = a/2 + pi
/// only at a = 2 pi / 3.
std::vector<MeridianSolution> isosceles_rotators(const MassTriple& masses, double a,
                                                 const MeridianOptions& options = {});

enum class ExceptionalCase { Case2, Case3 };

/// Closed-form angles for a vanishing G difference. For Case2 the pair is
/// (theta_12, theta_23) with nu = nu1; for Case3 it is (theta_12, theta_31)
/// with nu = nu2. Angles are theta_i - theta_j taken in (0, pi).
struct ExceptionalBranch {
  double sin12 = 0.0;
  double cos12 = 0.0;
  double sin_other = 0.0;
  double cos_other = 0.0;
  Shape shape{1.0, 2.0};
};

/// Both cosine branches, + first.
std::array<ExceptionalBranch, 2> exceptional_case_angles(ExceptionalCase which, double nu);

/// Equilateral fixed point, present only for equal masses.
std::optional<Shape> case4_fixed_point(const MassTriple& masses, double rel_tol = 1e-12);

struct RegionCounts {
  std::array<int, 4> per_region{};
  int total() const { return per_region[0] + per_region[1] + per_region[2] + per_region[3]; }
};

/// Closed-form rotator counts at a = pi/2 as a function of nu1 - nu2.
RegionCounts count_pi_over_2(double nu_diff, double tol = 1e-12);

}  // namespace s2re

#endif  // S2RE_FAMILIES_HPP

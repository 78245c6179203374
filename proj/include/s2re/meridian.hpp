// Rigid rotators on a rotating meridian.
//
// All bodies share the longitude phi = omega t and the colatitudes run over
// the extended range [-pi, pi]. A rotator is described by its shape
// (a, x) = (theta_2 - theta_1, theta_3 - theta_1); the configuration theta_k
// follows from the condition sum_k m_k sin(2 theta_k) = 0 that fixes the
// rotation axis along the angular momentum.
//
// Per pair (i, j) in the order (1,2), (2,3), (3,1):
//   F_ij = -2 m_i m_j sin(theta_j - theta_i) U'(D_ij^2)
//   G_ij =    m_i m_j sin(2 (theta_j - theta_i))
// and a shape is a rotator when s omega^2 / (2A) (G_ij - G_jk) = F_ij - F_jk
// holds for the three cyclic differences.

#ifndef S2RE_MERIDIAN_HPP
#define S2RE_MERIDIAN_HPP

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "s2re/dynamics.hpp"
#include "s2re/masses.hpp"
#include "s2re/potential.hpp"
#include "s2re/root_scan.hpp"

namespace s2re {

enum class Region { I, II, III, IV };

std::string to_string(Region region);
std::optional<Region> region_from_string(const std::string& name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// I: (0, a), II: (a, pi), III: (pi, pi + a), IV: (pi + a, 2 pi).
Interval region_interval(Region region, double a);

/// Region containing x (taken mod 2 pi); empty on a region boundary.
std::optional<Region> region_of(double x, double a, double boundary_tol = 0.0);

/// Sign functions with |sin x| = alpha sin x and |sin(x - a)| = beta sin(x - a).
struct RegionSigns {
  int alpha = 1;
  int beta = 1;
};
RegionSigns region_signs(Region region);

constexpr std::array<Region, 4> kAllRegions = {Region::I, Region::II, Region::III, Region::IV};

/// a = theta_2 - theta_1 in (0, pi); x = theta_3 - theta_1 reduced to
/// [0, 2 pi) and kept off the four singular points 0, a, pi, a + pi.
class Shape {
 public:
  Shape(double a, double x);

  double a() const { return a_; }
  double x() const { return x_; }
  double theta32() const { return x_ - a_; }
  Region region() const;

  /// Colatitudes (0, a, x) of the reference placement theta_1 = 0.
  std::array<double, 3> reference_thetas() const { return {0.0, a_, x_}; }

 private:
  double a_;
  double x_;
};

constexpr double kAmplitudeZeroTolerance = 1e-12;

/// A = |m_1 + m_2 e^{2i theta_21} + m_3 e^{2i theta_31}|.
double amplitude_A(const MassTriple& masses, double theta21, double theta31);
double amplitude_A(const MassTriple& masses, const Shape& shape);

/// Raised when A vanishes and the shape does not fix the configuration.
class AmplitudeZero : public std::domain_error {
 public:
  explicit AmplitudeZero(double amplitude);
  double amplitude() const { return amplitude_; }

 private:
  double amplitude_;
};

struct MeridianTranslation {
  double amplitude = 0.0;
  double alpha = 0.0;                   // phase with theta_1 = -alpha for s = +1
  int s = 1;
  Eigen::Vector3d sin2theta;            // from the translation formulas
  Eigen::Vector3d cos2theta;
  std::array<double, 3> theta{};        // lift with theta_1 in (-pi/2, pi/2]
  std::array<double, 3> theta_alt{};    // antipodal partner, every theta + pi
};

/// Configurations of a shape for branch s. Throws AmplitudeZero when
/// A <= kAmplitudeZeroTolerance * (m_1 + m_2 + m_3).
MeridianTranslation shape_to_configurations(const MassTriple& masses, const Shape& shape,
                                            int s);

struct PairQuantities {
  Eigen::Vector3d F;  // F_12, F_23, F_31
  Eigen::Vector3d G;  // G_12, G_23, G_31

  /// (X_12 - X_23, X_23 - X_31, X_31 - X_12)
  Eigen::Vector3d dF() const { return {F[0] - F[1], F[1] - F[2], F[2] - F[0]}; }
  Eigen::Vector3d dG() const { return {G[0] - G[1], G[1] - G[2], G[2] - G[0]}; }
};

PairQuantities pair_quantities(const MassTriple& masses, const Shape& shape,
                               const PairPotential& pot, const SphereRadius& r);

enum class CaseTag { Case1, Case2, Case3, Case4FixedPoint, AZeroFixedPoint };

std::string to_string(CaseTag tag);
std::optional<CaseTag> case_from_string(const std::string& name);

constexpr double kCaseTolerance = 1e-12;

/// Case 1 when (G_12 - G_23)(G_31 - G_12) != 0, Case 2 / Case 3 when only
/// the first / second factor vanishes, Case 4 when both do. The differences
/// are compared after division by m_2 m_3 and m_1 m_3.
CaseTag classify_case(const PairQuantities& pq, const MassTriple& masses,
                      double tol = kCaseTolerance);

class NotARotator : public std::runtime_error {
 public:
  explicit NotARotator(const std::string& what) : std::runtime_error(what) {}
};

struct OmegaBranch {
  int s = 1;
  std::optional<double> omega_squared;  // empty for a fixed point
  double ratio = 0.0;                   // s omega^2 / (2A)
  double inconsistency = 0.0;           // relative misfit of the three equations
  bool fixed_point() const { return !omega_squared.has_value(); }
};

constexpr double kRotatorTolerance = 1e-7;

/// s and omega^2 from s omega^2 / (2A) (G_ij - G_jk) = F_ij - F_jk. The
/// common ratio is the least-squares value over the three differences, so
/// vanishing G differences (Cases 2 and 3) drop out by themselves. Throws
/// NotARotator when the equations disagree beyond `tol`.
OmegaBranch solve_omega_and_branch(const PairQuantities& pq, const MassTriple& masses,
                                   double amplitude, CaseTag tag,
                                   double tol = kRotatorTolerance);

struct GFunctionParams {
  double a = 0.0;
  double nu1 = 1.0;
  double nu2 = 1.0;
  int alpha = 1;
  int beta = 1;

  static GFunctionParams for_region(double a, double nu1, double nu2, Region region);
};

/// Numerator g of the reduced cotangent rotator condition
/// f = g / (sin^2 x sin^2(x - a)). Templated so that the derivative can be
/// taken with Eigen's AutoDiffScalar.
template <typename Scalar>
Scalar g_function(const Scalar& x, const GFunctionParams& p) {
  using std::cos;
  using std::sin;
  const Scalar sx = sin(x), sxa = sin(x - p.a);
  const Scalar sx2 = sx * sx, sxa2 = sxa * sxa;
  const Scalar s2x = 2.0 * sx * cos(x), s2xa = 2.0 * sxa * cos(x - p.a);
  const double sa2 = std::sin(p.a) * std::sin(p.a), s2a = std::sin(2.0 * p.a);
  const double al = p.alpha, be = p.beta;
  return al * be * sx2 * sxa2 * (p.nu1 * s2x + p.nu2 * s2xa) -
         sa2 * (al * sx2 * s2x - be * sxa2 * s2xa) -
         sa2 * s2a * (p.nu2 * al * sx2 + p.nu1 * be * sxa2);
}

/// dg/dx with the signs held fixed.
double g_derivative(double x, const GFunctionParams& params);

/// g with the sign functions taken from the signs of sin x and sin(x - a).
double g_value(double x, double a, double nu1, double nu2);

/// g on a uniform grid, all points inside one region.
void g_samples(std::span<const double> xs, const GFunctionParams& params,
               std::span<double> out);

/// (F_12 - F_23)(G_31 - G_12) - (F_31 - F_12)(G_12 - G_23) times
/// sin^2(x) sin^2(x - a): the potential-generic rotator condition.
double rotator_condition(double x, double a, const MassTriple& masses,
                         const PairPotential& pot, const SphereRadius& r);

enum class ScanFunction { Auto, CotangentG, GenericRatio };

/// Smallest region-end margin used by the generic scan.
constexpr double kGenericScanExclusion = 1e-6;

struct MeridianOptions {
  PotentialPtr potential;  // cotangent on `radius` when empty
  SphereRadius radius{};
  ScanOptions scan{};
  ScanFunction scan_function = ScanFunction::Auto;
  double residual_tol = kDefaultResidualTolerance;
  double case_tol = kCaseTolerance;
  double rotator_tol = kRotatorTolerance;
  double exceptional_match_tol = 1e-9;  // |a - a_case| for closed-form shapes
  bool include_exceptional = true;

  PotentialPtr resolved_potential() const;
};

struct MeridianSolution {
  Shape shape{1.0, 2.0};
  Region region = Region::II;
  CaseTag case_tag = CaseTag::Case1;
  int s = 1;
  std::optional<double> omega_squared;  // empty for fixed points
  double amplitude = 0.0;
  std::array<double, 3> theta{};
  std::array<double, 3> theta_alt{};
  double residual = 0.0;      // max-norm for theta
  double residual_alt = 0.0;  // max-norm for theta_alt
  bool tangent_root = false;
  bool from_closed_form = false;

  bool fixed_point() const { return !omega_squared.has_value(); }
  double omega() const;
  RECandidate candidate(SphereRadius r = SphereRadius{}) const;
  RECandidate candidate_alt(SphereRadius r = SphereRadius{}) const;
};

/// Why a candidate shape did not become a solution.
struct RejectedShape {
  double x = 0.0;
  std::string reason;
};

struct ShapeResolution {
  std::optional<MeridianSolution> solution;
  std::string reason;  // set when solution is empty
};

/// Classifies a candidate shape, derives (s, omega^2), lifts it to both
/// antipodal configurations and checks the raw residuals.
ShapeResolution resolve_shape(const MassTriple& masses, const Shape& shape,
                              const MeridianOptions& options);

struct MeridianSearch {
  std::vector<MeridianSolution> solutions;
  std::vector<RejectedShape> rejected;

  std::array<int, 4> counts_per_region() const;
};

/// Shape roots of the rotator condition for fixed a, region by region.
/// Roots inside the boundary exclusion zone are dropped.
std::vector<std::pair<Region, ScanRoot>> meridian_shape_roots(double a,
                                                              const MassTriple& masses,
                                                              const MeridianOptions& options);

/// All rotators for a = theta_2 - theta_1 in (0, pi), sorted by x.
MeridianSearch find_meridian_rotators(double a, const MassTriple& masses,
                                      const MeridianOptions& options = {});

struct SweepRow {
  double a = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::array<int, 4> counts{};
  int rejected = 0;
  int total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

std::vector<SweepRow> sweep_counts(std::span<const double> a_values,
                                   std::span<const double> nu1_values,
                                   std::span<const double> nu2_values,
                                   const MeridianOptions& options = {});

}  // namespace s2re

#endif  // S2RE_MERIDIAN_HPP

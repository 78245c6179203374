// Relative equilibria with all three bodies on the equator under the
// cotangent potential. The longitude differences follow from the triangle
// whose sides are mu_k = sqrt(m_i m_j): sin(phi_i - phi_j) = rho mu_k.

#ifndef S2RE_EQUATOR_HPP
#define S2RE_EQUATOR_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "s2re/dynamics.hpp"
#include "s2re/masses.hpp"

namespace s2re {

enum class EquatorRegion { Interior, Boundary, Exterior };

std::string to_string(EquatorRegion region);

struct ExistenceCheck {
  EquatorRegion region = EquatorRegion::Interior;
  int violated = -1;  // zero-based k of the failing mu_k < mu_i + mu_j, or -1
  std::string inequality() const;
};

constexpr double kEquatorBoundaryTolerance = 1e-12;

ExistenceCheck existence_check(const MassTriple& masses,
                               double rel_tol = kEquatorBoundaryTolerance);

struct EquatorSolution {
  double dphi_12 = 0.0;  // phi_1 - phi_2
  double dphi_23 = 0.0;  // phi_2 - phi_3
  double dphi_31 = 0.0;  // phi_3 - phi_1
  double rho = 0.0;
  double neg_potential_energy = 0.0;
  bool exists = false;
  ExistenceCheck existence;

  /// Bodies at theta = pi/2 with phi_1 = phi0.
  RECandidate candidate(double omega, SphereRadius r = SphereRadius{},
                        double phi0 = 0.0) const;
};

class NoEquatorSolution : public std::runtime_error {
 public:
  explicit NoEquatorSolution(ExistenceCheck check);
  const ExistenceCheck& check() const { return check_; }

 private:
  ExistenceCheck check_;
};

/// Unique equator rotator; valid for every omega including zero. Throws
/// NoEquatorSolution outside the interior of the existence region.
EquatorSolution solve_equator(const MassTriple& masses, SphereRadius r = SphereRadius{});

/// The same closed forms without the existence gate. On the boundary they
/// give the antipodal limit (rho = 0, -V = 0).
EquatorSolution equator_closed_form(const MassTriple& masses, SphereRadius r = SphereRadius{});

/// One-parameter family of masses on s in [0, 1]; s = 1 is the terminal point.
using MassPath = std::function<MassTriple(double)>;

/// m1 = m2 = 1 + 3 s, m3 = 1: reaches mu_3 = mu_1 + mu_2 at s = 1.
MassPath default_antipodal_path();

struct AntipodalScanRow {
  double s = 0.0;
  Eigen::Vector3d masses;
  EquatorSolution solution;
};

struct AntipodalScan {
  std::vector<AntipodalScanRow> rows;
  std::size_t tail_start = 0;  // index of the -V maximum
  bool tail_monotone = false;  // -V strictly decreasing from tail_start on
};

/// Samples the path at steps + 1 equally spaced parameters. Every point
/// before the terminal one must be interior.
AntipodalScan antipodal_limit_scan(const MassPath& path, std::size_t steps,
                                   SphereRadius r = SphereRadius{});

}  // namespace s2re

#endif  // S2RE_EQUATOR_HPP

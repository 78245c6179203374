#include "s2re/equator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace s2re {

std::string to_string(EquatorRegion region) {
  switch (region) {
    case EquatorRegion::Interior: return "interior";
    case EquatorRegion::Boundary: return "boundary";
    case EquatorRegion::Exterior: return "exterior";
  }
  return "unknown";
}

std::string ExistenceCheck::inequality() const {
  if (violated < 0) return "";
  // mu_k < mu_i + mu_j divided through by mu_k.
  const int k = violated;
  const int i = (k + 1) % 3, j = (k + 2) % 3;
  std::ostringstream os;
  os << "1 < sqrt(m" << k + 1 << "/m" << i + 1 << ") + sqrt(m" << k + 1 << "/m" << j + 1
     << ")";
  return os.str();
}

ExistenceCheck existence_check(const MassTriple& masses, double rel_tol) {
  const Eigen::Vector3d mu = masses.mus();
  ExistenceCheck out;
  for (int k = 0; k < 3; ++k) {
    const double other = mu[(k + 1) % 3] + mu[(k + 2) % 3];
    const double gap = other - mu[k];
    if (std::abs(gap) <= rel_tol * other) {
      out.region = EquatorRegion::Boundary;
      out.violated = k;
      return out;
    }
    if (gap < 0) {
      out.region = EquatorRegion::Exterior;
      out.violated = k;
      return out;
    }
  }
  return out;
}

NoEquatorSolution::NoEquatorSolution(ExistenceCheck check)
    : std::runtime_error("no equator relative equilibrium (" + to_string(check.region) +
                         "): violates " + check.inequality()),
      check_(check) {}

EquatorSolution equator_closed_form(const MassTriple& masses, SphereRadius r) {
  const Eigen::Vector3d mu = masses.mus();
  const double m1 = mu[0], m2 = mu[1], m3 = mu[2];
  const double heron = std::max(
      0.0, (m1 + m2 + m3) * (m1 + m2 - m3) * (m2 + m3 - m1) * (m3 + m1 - m2));
  const double root = std::sqrt(heron);

  EquatorSolution sol;
  sol.existence = existence_check(masses);
  sol.exists = sol.existence.region == EquatorRegion::Interior;
  sol.rho = root / (2.0 * m1 * m2 * m3);
  sol.neg_potential_energy = root / r.value();

  // phi_i - phi_j pairs with mu_k for (i, j, k) cyclic.
  auto angle = [&](int i, int j, int k) {
    const double c = (mu[k] * mu[k] - (mu[i] * mu[i] + mu[j] * mu[j])) / (2.0 * mu[i] * mu[j]);
    return std::atan2(sol.rho * mu[k], std::clamp(c, -1.0, 1.0));
  };
  sol.dphi_12 = angle(0, 1, 2);
  sol.dphi_23 = angle(1, 2, 0);
  sol.dphi_31 = angle(2, 0, 1);
  return sol;
}

EquatorSolution solve_equator(const MassTriple& masses, SphereRadius r) {
  EquatorSolution sol = equator_closed_form(masses, r);
  if (!sol.exists) throw NoEquatorSolution(sol.existence);
  return sol;
}

RECandidate EquatorSolution::candidate(double omega, SphereRadius r, double phi0) const {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  RECandidate c;
  c.omega = omega;
  c.radius = r;
  c.points[0] = {half_pi, phi0};
  c.points[1] = {half_pi, phi0 - dphi_12};
  c.points[2] = {half_pi, phi0 - dphi_12 - dphi_23};
  return c;
}

MassPath default_antipodal_path() {
  return [](double s) { return MassTriple(1.0 + 3.0 * s, 1.0 + 3.0 * s, 1.0); };
}

AntipodalScan antipodal_limit_scan(const MassPath& path, std::size_t steps, SphereRadius r) {
  if (steps == 0) throw std::invalid_argument("scan needs at least one step");
  AntipodalScan scan;
  scan.rows.reserve(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n) {
    const double s = static_cast<double>(n) / static_cast<double>(steps);
    const MassTriple m = path(s);
    AntipodalScanRow row;
    row.s = s;
    row.masses = m.vector();
    row.solution = equator_closed_form(m, r);
    if (n < steps && !row.solution.exists) {
      std::ostringstream os;
      os << "mass path leaves the interior region at s = " << s << " ("
         << to_string(row.solution.existence.region) << ")";
      throw std::domain_error(os.str());
    }
    scan.rows.push_back(row);
  }
  std::size_t peak = 0;
  for (std::size_t n = 1; n < scan.rows.size(); ++n)
    if (scan.rows[n].solution.neg_potential_energy >
        scan.rows[peak].solution.neg_potential_energy)
      peak = n;
  scan.tail_start = peak;
  scan.tail_monotone = true;
  for (std::size_t n = peak + 1; n < scan.rows.size(); ++n)
    if (!(scan.rows[n].solution.neg_potential_energy <
          scan.rows[n - 1].solution.neg_potential_energy))
      scan.tail_monotone = false;
  return scan;
}

}  // namespace s2re

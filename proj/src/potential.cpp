#include "s2re/potential.hpp"

#include <cmath>
#include <sstream>

namespace s2re {

namespace {

std::string describe(SingularityKind kind, double d2, int pair) {
  std::ostringstream os;
  os << (kind == SingularityKind::Collision ? "collision" : "antipodal")
     << " singularity at D^2 = " << d2;
  if (pair >= 0) {
    static const char* names[] = {"(1,2)", "(2,3)", "(3,1)"};
    os << " for pair " << names[pair];
  }
  return os.str();
}

void check_domain(double d2, const SphereRadius& r) {
  const double max_d2 = 4.0 * r.value() * r.value();
  if (!(d2 > 0.0)) throw SingularityError(SingularityKind::Collision, d2);
  if (!(d2 < max_d2)) throw SingularityError(SingularityKind::Antipodal, d2);
}

}  // namespace

SingularityError::SingularityError(SingularityKind kind, double d2, int pair)
    : std::domain_error(describe(kind, d2, pair)), kind_(kind), d2_(d2), pair_(pair) {}

double cotangent_u(double d2, const SphereRadius& r) {
  check_domain(d2, r);
  const double e2d2 = r.epsilon() * r.epsilon() * d2;
  return (1.0 - 2.0 * e2d2) / std::sqrt(d2 * (1.0 - e2d2));
}

double cotangent_u_prime(double d2, const SphereRadius& r) {
  check_domain(d2, r);
  // D^2 (1 - eps^2 D^2) = R^2 sin^2(sigma)
  const double q = d2 * (1.0 - r.epsilon() * r.epsilon() * d2);
  return -0.5 / (q * std::sqrt(q));
}

double CotangentPotential::u(double d2) const { return cotangent_u(d2, r_); }
double CotangentPotential::u_prime(double d2) const { return cotangent_u_prime(d2, r_); }

PotentialPtr make_cotangent(SphereRadius r) {
  return std::make_shared<const CotangentPotential>(r);
}

PotentialPtr make_repulsive(PotentialPtr inner) {
  return std::make_shared<const RepulsivePotential>(std::move(inner));
}

double finite_difference_u_prime(const PairPotential& pot, double d2, double h) {
  return (pot.u(d2 + h) - pot.u(d2 - h)) / (2.0 * h);
}

double total_potential(const std::array<SpherePoint, 3>& points, const MassTriple& masses,
                       const PairPotential& pot, const SphereRadius& r) {
  double v = 0.0;
  for (int p = 0; p < 3; ++p) {
    const int i = p;
    const int j = (p + 1) % 3;
    const double d2 = chord_squared(points[i], points[j], r);
    try {
      v += masses[i] * masses[j] * pot.u(d2);
    } catch (const SingularityError& e) {
      throw e.with_pair(p);
    }
  }
  return v;
}

}  // namespace s2re

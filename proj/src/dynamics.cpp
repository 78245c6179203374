#include "s2re/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Geometry>

namespace s2re {

namespace {

constexpr int kPairI[3] = {0, 1, 2};
constexpr int kPairJ[3] = {1, 2, 0};

// Pair index for the unordered pair {i, j}.
int pair_of(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 1 && j == 2) return 1;
  return 2;
}

double pair_u_prime(const PairPotential& pot, double d2, int pair) {
  try {
    return pot.u_prime(d2);
  } catch (const SingularityError& e) {
    throw e.with_pair(pair);
  }
}

double pair_u(const PairPotential& pot, double d2, int pair) {
  try {
    return pot.u(d2);
  } catch (const SingularityError& e) {
    throw e.with_pair(pair);
  }
}

// U'(D^2) for the pairs (1,2), (2,3), (3,1).
Eigen::Vector3d spherical_u_primes(const std::array<SpherePoint, 3>& p,
                                   const PairPotential& pot, const SphereRadius& r) {
  Eigen::Vector3d up;
  for (int q = 0; q < 3; ++q)
    up[q] = pair_u_prime(pot, chord_squared(p[kPairI[q]], p[kPairJ[q]], r), q);
  return up;
}

}  // namespace

double SphericalState::kinetic_energy(const MassTriple& masses) const {
  const double r2 = radius.value() * radius.value();
  double k = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double s = std::sin(points[i].theta);
    k += 0.5 * masses[i] *
         (theta_dot[i] * theta_dot[i] + s * s * phi_dot[i] * phi_dot[i]);
  }
  return r2 * k;
}

AngularMomentum angular_momentum(const SphericalState& state, const MassTriple& masses) {
  const double r2 = state.radius.value() * state.radius.value();
  AngularMomentum c;
  for (int k = 0; k < 3; ++k) {
    const double th = state.points[k].theta;
    const double ph = state.points[k].phi;
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double td = state.theta_dot[k], pd = state.phi_dot[k];
    c.cx += masses[k] * (-sp * td - st * ct * cp * pd);
    c.cy += masses[k] * (cp * td - st * ct * sp * pd);
    c.cz += masses[k] * st * st * pd;
  }
  c.cx *= r2;
  c.cy *= r2;
  c.cz *= r2;
  return c;
}

StateDerivative eom_rhs(const SphericalState& state, const MassTriple& masses,
                        const PairPotential& pot) {
  const auto& p = state.points;
  const Eigen::Vector3d up = spherical_u_primes(p, pot, state.radius);

  StateDerivative d;
  d.theta_dot = state.theta_dot;
  d.phi_dot = state.phi_dot;
  for (int k = 0; k < 3; ++k) {
    const double stk = std::sin(p[k].theta), ctk = std::cos(p[k].theta);
    double theta_force = 0.0;
    double phi_force = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (i == k) continue;
      const double u = up[pair_of(i, k)];
      const double sti = std::sin(p[i].theta), cti = std::cos(p[i].theta);
      const double dphi = p[k].phi - p[i].phi;
      theta_force += 2.0 * masses[i] * u * (stk * cti - ctk * sti * std::cos(dphi));
      phi_force += 2.0 * masses[i] * u * sti * stk * std::sin(dphi);
    }
    const double pd = state.phi_dot[k];
    d.theta_ddot[k] = stk * ctk * pd * pd + theta_force;
    if (std::abs(stk) < 1e-300)
      throw std::domain_error("body on a pole: longitude equation is degenerate");
    d.phi_ddot[k] =
        (phi_force - 2.0 * stk * ctk * state.theta_dot[k] * pd) / (stk * stk);
  }
  return d;
}

CartesianState to_cartesian(const SphericalState& state) {
  const double r = state.radius.value();
  CartesianState c;
  for (int k = 0; k < 3; ++k) {
    const double th = state.points[k].theta, ph = state.points[k].phi;
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double td = state.theta_dot[k], pd = state.phi_dot[k];
    c.position.col(k) = r * Eigen::Vector3d(st * cp, st * sp, ct);
    c.velocity.col(k) =
        r * Eigen::Vector3d(ct * cp * td - st * sp * pd, ct * sp * td + st * cp * pd, -st * td);
  }
  return c;
}

Eigen::Matrix3d cartesian_acceleration(const CartesianState& s, const MassTriple& masses,
                                       const PairPotential& pot, double /*r*/) {
  // Gradient of V: dV/dx_k = sum_i m_i m_k U'(D_ik^2) 2 (x_k - x_i).
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  for (int q = 0; q < 3; ++q) {
    const int i = kPairI[q], j = kPairJ[q];
    const Eigen::Vector3d d = s.position.col(i) - s.position.col(j);
    const double u = pair_u_prime(pot, d.squaredNorm(), q);
    grad.col(i) += 2.0 * masses[i] * masses[j] * u * d;
    grad.col(j) -= 2.0 * masses[i] * masses[j] * u * d;
  }
  Eigen::Matrix3d acc;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d x = s.position.col(k);
    const Eigen::Vector3d v = s.velocity.col(k);
    const double x2 = x.squaredNorm();
    const Eigen::Vector3d f = grad.col(k) / masses[k];
    // Tangential part of the force plus the centripetal constraint term.
    acc.col(k) = f - (x.dot(f) / x2) * x - (v.squaredNorm() / x2) * x;
  }
  return acc;
}

Eigen::Vector3d cartesian_angular_momentum(const CartesianState& s, const MassTriple& masses) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k)
    c += masses[k] * s.position.col(k).cross(s.velocity.col(k));
  return c;
}

double cartesian_energy(const CartesianState& s, const MassTriple& masses,
                        const PairPotential& pot) {
  double k = 0.0;
  for (int i = 0; i < 3; ++i) k += 0.5 * masses[i] * s.velocity.col(i).squaredNorm();
  double v = 0.0;
  for (int q = 0; q < 3; ++q) {
    const int i = kPairI[q], j = kPairJ[q];
    v += masses[i] * masses[j] *
         pair_u(pot, (s.position.col(i) - s.position.col(j)).squaredNorm(), q);
  }
  return k - v;
}

Eigen::Vector3d pair_arc_angles(const Eigen::Matrix3d& position) {
  Eigen::Vector3d sigma;
  for (int q = 0; q < 3; ++q) {
    const Eigen::Vector3d a = position.col(kPairI[q]);
    const Eigen::Vector3d b = position.col(kPairJ[q]);
    sigma[q] = std::atan2(a.cross(b).norm(), a.dot(b));
  }
  return sigma;
}

double DriftReport::relative_angular_momentum_drift() const {
  if (angular_momentum_scale <= std::numeric_limits<double>::min())
    return max_angular_momentum_drift;
  return max_angular_momentum_drift / angular_momentum_scale;
}

Trajectory integrate(const SphericalState& state, const MassTriple& masses,
                     const PairPotential& pot, double t_end, double dt,
                     const IntegrateOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("integration step must be > 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("end time must be >= 0");

  const double r = state.radius.value();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt)));
  const double h = t_end / static_cast<double>(steps);
  const double w = options.frame_rate;
  const Eigen::Vector3d ez = Eigen::Vector3d::UnitZ();

  // y holds positions and velocities in the frame turning at rate w about z.
  auto spin = [&](const Eigen::Matrix3d& x) {
    Eigen::Matrix3d out;
    for (int k = 0; k < 3; ++k) out.col(k) = w * ez.cross(x.col(k));
    return out;
  };
  auto to_inertial = [&](double t, const CartesianState& s) {
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(w * t, ez).toRotationMatrix();
    return CartesianState{rot * s.position, rot * (s.velocity + spin(s.position))};
  };

  Trajectory traj;
  CartesianState y = to_cartesian(state);
  y.velocity -= spin(y.position);

  auto sample = [&](double t, const CartesianState& s) {
    TrajectorySample out;
    out.t = t;
    out.state = to_inertial(t, s);
    out.energy = cartesian_energy(out.state, masses, pot);
    out.angular_momentum = cartesian_angular_momentum(out.state, masses);
    out.arc_angles = pair_arc_angles(out.state.position);
    return out;
  };

  TrajectorySample first;
  try {
    first = sample(0.0, y);
  } catch (const SingularityError& e) {
    traj.error = e.what();
    return traj;
  }
  traj.samples.push_back(first);

  // Energy drift is measured against K + |V| so a vanishing total does not
  // inflate the ratio.
  double energy_scale = 0.0;
  {
    double k = 0.0;
    for (int i = 0; i < 3; ++i) k += 0.5 * masses[i] * first.state.velocity.col(i).squaredNorm();
    energy_scale = k + std::abs(first.energy - k);
    if (energy_scale <= 0.0) energy_scale = 1.0;
  }
  traj.drift.angular_momentum_scale = first.angular_momentum.norm();

  auto deriv = [&](const CartesianState& s) {
    const CartesianState in{s.position, s.velocity + spin(s.position)};
    CartesianState d;
    d.position = s.velocity;
    d.velocity = cartesian_acceleration(in, masses, pot, r) - 2.0 * spin(s.velocity) -
                 spin(spin(s.position));
    return d;
  };
  auto axpy = [](const CartesianState& s, double a, const CartesianState& d) {
    return CartesianState{s.position + a * d.position, s.velocity + a * d.velocity};
  };

  TrajectorySample last = first;
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      const CartesianState k1 = deriv(y);
      const CartesianState k2 = deriv(axpy(y, 0.5 * h, k1));
      const CartesianState k3 = deriv(axpy(y, 0.5 * h, k2));
      const CartesianState k4 = deriv(axpy(y, h, k3));
      y.position += (h / 6.0) * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position);
      y.velocity += (h / 6.0) * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity + k4.velocity);
      last = sample(static_cast<double>(n) * h, y);
    } catch (const SingularityError& e) {
      traj.error = e.what();
      traj.samples.push_back(last);
      return traj;
    }
    auto& d = traj.drift;
    d.max_sigma_drift =
        std::max(d.max_sigma_drift, (last.arc_angles - first.arc_angles).cwiseAbs().maxCoeff());
    d.max_energy_drift =
        std::max(d.max_energy_drift, std::abs(last.energy - first.energy) / energy_scale);
    d.max_angular_momentum_drift = std::max(
        d.max_angular_momentum_drift, (last.angular_momentum - first.angular_momentum).norm());
    if (options.sample_every != 0 && n % options.sample_every == 0 && n != steps)
      traj.samples.push_back(last);
  }
  traj.samples.push_back(last);
  return traj;
}

REResiduals re_residuals(const RECandidate& candidate, const MassTriple& masses,
                         const PairPotential& pot) {
  return re_residuals(candidate.points, candidate.omega * candidate.omega, candidate.radius,
                      masses, pot);
}

REResiduals re_residuals(const std::array<SpherePoint, 3>& p, double w2, SphereRadius radius,
                         const MassTriple& masses, const PairPotential& pot) {
  const Eigen::Vector3d up = spherical_u_primes(p, pot, radius);

  REResiduals res;
  if (w2 != 0.0) {
    for (int k = 0; k < 3; ++k) {
      const double sc = masses[k] * std::sin(p[k].theta) * std::cos(p[k].theta);
      res.values[0] += sc * std::cos(p[k].phi);
      res.values[1] += sc * std::sin(p[k].phi);
    }
  }

  // S_ij = m_i m_j U'(D_ij^2) sin(theta_i) sin(theta_j) sin(phi_i - phi_j)
  Eigen::Vector3d s;
  for (int q = 0; q < 3; ++q) {
    const int i = kPairI[q], j = kPairJ[q];
    s[q] = masses[i] * masses[j] * up[q] * std::sin(p[i].theta) * std::sin(p[j].theta) *
           std::sin(p[i].phi - p[j].phi);
  }
  res.values[2] = s[0] - s[1];
  res.values[3] = s[1] - s[2];

  for (int k = 0; k < 3; ++k) {
    const double stk = std::sin(p[k].theta), ctk = std::cos(p[k].theta);
    const double lhs = -w2 * masses[k] * stk * ctk;
    double rhs = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (i == k) continue;
      rhs += 2.0 * masses[k] * masses[i] * up[pair_of(i, k)] *
             (stk * std::cos(p[i].theta) -
              ctk * std::sin(p[i].theta) * std::cos(p[k].phi - p[i].phi));
    }
    res.values[4 + k] = lhs - rhs;
  }
  return res;
}

SphericalState rotating_state(const RECandidate& candidate) {
  SphericalState s;
  s.points = candidate.points;
  s.phi_dot = Eigen::Vector3d::Constant(candidate.omega);
  s.radius = candidate.radius;
  return s;
}

}  // namespace s2re

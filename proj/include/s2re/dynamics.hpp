// Equations of motion, angular momentum and relative-equilibrium residuals
// for three bodies on a sphere. This layer is the independent reference the
// solvers are checked against: it evaluates the raw equations and shares no
// algebra with the shape-variable reductions.

#ifndef S2RE_DYNAMICS_HPP
#define S2RE_DYNAMICS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "s2re/geometry.hpp"
#include "s2re/masses.hpp"
#include "s2re/potential.hpp"

namespace s2re {

struct SphericalState {
  std::array<SpherePoint, 3> points{};
  Eigen::Vector3d theta_dot = Eigen::Vector3d::Zero();
  Eigen::Vector3d phi_dot = Eigen::Vector3d::Zero();
  SphereRadius radius{};

  double kinetic_energy(const MassTriple& masses) const;
};

struct AngularMomentum {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;

  Eigen::Vector3d vector() const { return {cx, cy, cz}; }
};

/// Component sums in spherical coordinates.
AngularMomentum angular_momentum(const SphericalState& state, const MassTriple& masses);

struct StateDerivative {
  Eigen::Vector3d theta_dot;
  Eigen::Vector3d phi_dot;
  Eigen::Vector3d theta_ddot;
  Eigen::Vector3d phi_ddot;
};

/// Euler-Lagrange equations in (theta, phi). Throws SingularityError for a
/// singular pair and std::domain_error when a body sits on a pole, where the
/// longitude equation degenerates.
StateDerivative eom_rhs(const SphericalState& state, const MassTriple& masses,
                        const PairPotential& pot);

/// Embedding coordinates; column k is body k.
struct CartesianState {
  Eigen::Matrix3d position;
  Eigen::Matrix3d velocity;
};

CartesianState to_cartesian(const SphericalState& state);

/// Constrained accelerations on the sphere of radius r.
Eigen::Matrix3d cartesian_acceleration(const CartesianState& state, const MassTriple& masses,
                                       const PairPotential& pot, double r);

Eigen::Vector3d cartesian_angular_momentum(const CartesianState& state,
                                           const MassTriple& masses);

/// K - V.
double cartesian_energy(const CartesianState& state, const MassTriple& masses,
                        const PairPotential& pot);

/// Arc angles sigma_12, sigma_23, sigma_31.
Eigen::Vector3d pair_arc_angles(const Eigen::Matrix3d& position);

struct TrajectorySample {
  double t = 0.0;
  CartesianState state;
  double energy = 0.0;
  Eigen::Vector3d angular_momentum;
  Eigen::Vector3d arc_angles;
};

struct DriftReport {
  double max_sigma_drift = 0.0;           // max_t max_ij |sigma_ij(t) - sigma_ij(0)|
  double max_energy_drift = 0.0;          // relative to max(|E(0)|, 1) scale
  double max_angular_momentum_drift = 0.0;  // |c(t) - c(0)|, absolute
  double angular_momentum_scale = 0.0;    // |c(0)|
  double relative_angular_momentum_drift() const;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  DriftReport drift;
  std::optional<std::string> error;  // set when integration stopped early
  bool complete() const { return !error.has_value(); }
};

struct IntegrateOptions {
  std::size_t sample_every = 0;  // 0: keep only the first and last sample
  // Rate of the frame the steps are taken in, about z. Samples and drifts are
  // always inertial. Stepping with the rate of a relative equilibrium makes it
  // a rest point, so truncation error no longer feeds its instability.
  double frame_rate = 0.0;
};

/// Fixed-step classical Runge-Kutta in embedding coordinates. The last step
/// is shortened so the run ends exactly at t_end.
Trajectory integrate(const SphericalState& state, const MassTriple& masses,
                     const PairPotential& pot, double t_end, double dt,
                     const IntegrateOptions& options = {});

/// A candidate relative equilibrium: positions at t = 0 and the common
/// angular velocity.
struct RECandidate {
  std::array<SpherePoint, 3> points{};
  double omega = 0.0;
  SphereRadius radius{};
};

/// Residual entries, in order: the two planar components of
/// sum_k m_k sin(theta_k) cos(theta_k) e_k (zero when omega = 0), the
/// differences S_12 - S_23 and S_23 - S_31 of the longitude equations and the
/// three colatitude equations (left minus right).
struct REResiduals {
  Eigen::Matrix<double, 7, 1> values = Eigen::Matrix<double, 7, 1>::Zero();
  double max_norm() const { return values.cwiseAbs().maxCoeff(); }
};

REResiduals re_residuals(const RECandidate& candidate, const MassTriple& masses,
                         const PairPotential& pot);

/// Same equations with omega^2 given directly. A negative value is accepted
/// as a formal rate; the branch-symmetry check needs it.
REResiduals re_residuals(const std::array<SpherePoint, 3>& points, double omega_squared,
                         SphereRadius radius, const MassTriple& masses,
                         const PairPotential& pot);

constexpr double kDefaultResidualTolerance = 1e-9;

/// Spherical state of a rigid rotation about z with rate omega.
SphericalState rotating_state(const RECandidate& candidate);

}  // namespace s2re

#endif  // S2RE_DYNAMICS_HPP

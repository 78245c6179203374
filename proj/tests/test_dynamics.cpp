#include <gtest/gtest.h>

#include <random>

#include "s2re/dynamics.hpp"
#include "s2re/equator.hpp"
#include "test_support.hpp"

using namespace s2re;
using s2re::test::kPi;

namespace {

SphericalState random_state(std::mt19937& rng, double r) {
  std::uniform_real_distribution<double> th(0.4, kPi - 0.4), ph(0, 2 * kPi), v(-0.3, 0.3);
  SphericalState s;
  s.radius = SphereRadius(r);
  s.points = {{{th(rng), 0.0}, {th(rng), 2.0}, {th(rng), 4.2}}};
  for (int k = 0; k < 3; ++k) {
    s.points[k].phi += 0.3 * v(rng);
    s.theta_dot[k] = v(rng);
    s.phi_dot[k] = v(rng);
  }
  return s;
}

// Second time derivative of the embedding from spherical rates.
Eigen::Vector3d embedded_acceleration(double r, double t, double p, double td, double pd,
                                      double tdd, double pdd) {
  const double st = std::sin(t), ct = std::cos(t), sp = std::sin(p), cp = std::cos(p);
  const Eigen::Vector3d xt(ct * cp, ct * sp, -st), xp(-st * sp, st * cp, 0);
  const Eigen::Vector3d xtt(-st * cp, -st * sp, -ct), xtp(-ct * sp, ct * cp, 0),
      xpp(-st * cp, -st * sp, 0);
  return r * (xt * tdd + xp * pdd + xtt * td * td + 2 * xtp * td * pd + xpp * pd * pd);
}

}  // namespace

TEST(Dynamics, SphericalAndCartesianAccelerationsAgree) {
  std::mt19937 rng(3);
  const MassTriple m(1.3, 0.7, 2.1);
  for (double r : {1.0, 2.5}) {
    const auto pot = make_cotangent(SphereRadius(r));
    for (int n = 0; n < 20; ++n) {
      const SphericalState s = random_state(rng, r);
      const StateDerivative d = eom_rhs(s, m, *pot);
      const Eigen::Matrix3d acc = cartesian_acceleration(to_cartesian(s), m, *pot, r);
      for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3d want =
            embedded_acceleration(r, s.points[k].theta, s.points[k].phi, s.theta_dot[k],
                                  s.phi_dot[k], d.theta_ddot[k], d.phi_ddot[k]);
        EXPECT_LT((acc.col(k) - want).norm(), 1e-10 * std::max(1.0, want.norm()));
      }
    }
  }
}

TEST(Dynamics, AngularMomentumFormsAgree) {
  std::mt19937 rng(5);
  const MassTriple m(1.0, 2.0, 3.0);
  for (int n = 0; n < 20; ++n) {
    const SphericalState s = random_state(rng, 1.7);
    const Eigen::Vector3d a = angular_momentum(s, m).vector();
    const Eigen::Vector3d b = cartesian_angular_momentum(to_cartesian(s), m);
    EXPECT_LT((a - b).norm(), 1e-12 * std::max(1.0, b.norm()));
  }
}

TEST(Dynamics, KineticEnergyMatchesCartesian) {
  std::mt19937 rng(9);
  const MassTriple m(0.5, 1.5, 1.0);
  for (int n = 0; n < 10; ++n) {
    const SphericalState s = random_state(rng, 1.3);
    const CartesianState c = to_cartesian(s);
    double k = 0;
    for (int i = 0; i < 3; ++i) k += 0.5 * m[i] * c.velocity.col(i).squaredNorm();
    EXPECT_NEAR(s.kinetic_energy(m), k, 1e-13);
  }
}

TEST(Dynamics, IntegrationConservesEnergyAndMomentum) {
  std::mt19937 rng(17);
  const MassTriple m(1.0, 1.4, 0.8);
  const auto pot = make_cotangent();
  const SphericalState s = random_state(rng, 1.0);
  // Short enough to stay clear of the close encounter this state runs into.
  const Trajectory tr = integrate(s, m, *pot, 0.8, 1e-3);
  ASSERT_TRUE(tr.complete());
  EXPECT_LT(tr.drift.max_energy_drift, 1e-9);
  EXPECT_LT(tr.drift.max_angular_momentum_drift, 1e-9);
  EXPECT_NEAR(tr.samples.back().t, 0.8, 1e-14);
  for (const auto& sample : tr.samples)
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(sample.state.position.col(k).norm(), 1.0, 1e-8);
}

TEST(Dynamics, RotatingFrameGivesSameTrajectory) {
  std::mt19937 rng(23);
  const MassTriple m(1.0, 1.0, 2.0);
  const auto pot = make_cotangent();
  const SphericalState s = random_state(rng, 1.0);
  IntegrateOptions rot;
  rot.frame_rate = 0.7;
  const Trajectory a = integrate(s, m, *pot, 1.0, 5e-4);
  const Trajectory b = integrate(s, m, *pot, 1.0, 5e-4, rot);
  ASSERT_TRUE(a.complete() && b.complete());
  EXPECT_LT((a.samples.back().state.position - b.samples.back().state.position).norm(), 1e-9);
  EXPECT_LT((a.samples.back().state.velocity - b.samples.back().state.velocity).norm(), 1e-9);
}

TEST(Dynamics, PairArcAngles) {
  Eigen::Matrix3d p;
  p.col(0) = Eigen::Vector3d(1, 0, 0);
  p.col(1) = Eigen::Vector3d(0, 2, 0);
  p.col(2) = Eigen::Vector3d(-3, 0, 0);
  const Eigen::Vector3d s = pair_arc_angles(p);
  EXPECT_NEAR(s[0], kPi / 2, 1e-15);
  EXPECT_NEAR(s[1], kPi / 2, 1e-15);
  EXPECT_NEAR(s[2], kPi, 1e-7);
}

TEST(Dynamics, EquatorRotatorIsRigid) {
  const MassTriple m(1, 2, 3);
  const auto pot = make_cotangent();
  const EquatorSolution sol = solve_equator(m);
  const RECandidate c = sol.candidate(1.3);
  EXPECT_LT(re_residuals(c, m, *pot).max_norm(), 1e-12);
  const Trajectory tr = integrate(rotating_state(c), m, *pot, 2 * kPi / 1.3, 1e-3);
  ASSERT_TRUE(tr.complete());
  EXPECT_LT(tr.drift.max_sigma_drift, 1e-8);
}

TEST(Dynamics, ResidualsDetectNonEquilibrium) {
  const MassTriple m(1, 2, 3);
  const auto pot = make_cotangent();
  RECandidate c = solve_equator(m).candidate(1.0);
  c.points[1].phi += 0.05;
  EXPECT_GT(re_residuals(c, m, *pot).max_norm(), 1e-3);
}

TEST(Dynamics, FormalNegativeRateMatchesRate) {
  const MassTriple m(1, 2, 3);
  const auto pot = make_cotangent();
  RECandidate c = solve_equator(m).candidate(0.0);
  c.points = {{{0.7, 0.0}, {1.9, 0.0}, {2.6, 0.0}}};
  c.omega = 1.1;
  const auto a = re_residuals(c, m, *pot);
  const auto b = re_residuals(c.points, 1.21, c.radius, m, *pot);
  EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Dynamics, PolarBodyRejected) {
  SphericalState s;
  s.points = {{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}};
  EXPECT_THROW(eom_rhs(s, MassTriple(1, 1, 1), *make_cotangent()), std::domain_error);
}

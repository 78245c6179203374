// Spherical-coordinate kinematics on a sphere of radius R: embedding,
// chord lengths and arc angles.
//
// Colatitude theta is allowed on the extended range [-pi, pi] so that a
// body on a meridian can sit on either side of the rotation axis.

#ifndef S2RE_GEOMETRY_HPP
#define S2RE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace s2re {

template <typename Scalar = double>
struct SpherePointT {
  Scalar theta{0};  // colatitude
  Scalar phi{0};    // longitude
};
using SpherePoint = SpherePointT<double>;

/// Radius of the sphere together with the derived epsilon = 1/(2R).
class SphereRadius {
 public:
  SphereRadius() = default;
  explicit SphereRadius(double r) : r_(r) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("sphere radius must be finite and > 0");
  }
  double value() const { return r_; }
  double epsilon() const { return 0.5 / r_; }

 private:
  double r_ = 1.0;
};

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> embed(const SpherePointT<Scalar>& p, Scalar r) {
  using std::cos;
  using std::sin;
  const Scalar st = sin(p.theta);
  return {r * st * cos(p.phi), r * st * sin(p.phi), r * cos(p.theta)};
}

/// Squared chord 2R^2 (1 - cos t_i cos t_j - sin t_i sin t_j cos(phi_i - phi_j)).
template <typename Scalar>
Scalar chord_squared(const SpherePointT<Scalar>& pi, const SpherePointT<Scalar>& pj,
                     Scalar r) {
  using std::cos;
  using std::sin;
  // Haversine form of the same expression; no cancellation for close pairs.
  const Scalar hd = sin((pi.theta - pj.theta) / 2);
  const Scalar hp = sin((pi.phi - pj.phi) / 2);
  const Scalar h = hd * hd + sin(pi.theta) * sin(pj.theta) * hp * hp;
  return 4 * r * r * std::clamp<Scalar>(h, 0, 1);
}

inline double chord_squared(const SpherePoint& pi, const SpherePoint& pj,
                            const SphereRadius& r) {
  return chord_squared<double>(pi, pj, r.value());
}

/// Arc angle in [0, pi] as seen from the centre of the sphere.
template <typename Scalar>
Scalar arc_angle(const SpherePointT<Scalar>& pi, const SpherePointT<Scalar>& pj) {
  using std::acos;
  using std::cos;
  using std::sin;
  const Scalar c = cos(pi.theta) * cos(pj.theta) +
                   sin(pi.theta) * sin(pj.theta) * cos(pi.phi - pj.phi);
  return acos(std::clamp<Scalar>(c, -1, 1));
}

/// Chord length D = 2R sin(sigma/2).
template <typename Scalar>
Scalar chord_from_arc(Scalar sigma, Scalar r) {
  using std::sin;
  if (!(sigma >= 0) || sigma > std::numbers::pi_v<Scalar>)
    throw std::domain_error("arc angle must lie in [0, pi]");
  return 2 * r * sin(sigma / 2);
}

inline double chord_from_arc(double sigma, const SphereRadius& r) {
  return chord_from_arc<double>(sigma, r.value());
}

/// Inverse of chord_from_arc; the ratio is clamped to [0, 1].
template <typename Scalar>
Scalar arc_from_chord(Scalar d, Scalar r) {
  using std::asin;
  return 2 * asin(std::clamp<Scalar>(d / (2 * r), 0, 1));
}

/// Wraps an angle into (-pi, pi].
inline double wrap_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

/// Wraps an angle into [0, 2 pi).
inline double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle, two_pi);
  if (w < 0) w += two_pi;
  if (w >= two_pi) w -= two_pi;
  return w;
}

}  // namespace s2re

#endif  // S2RE_GEOMETRY_HPP

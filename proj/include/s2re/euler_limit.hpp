// Flat-space limit of the region-II rotator condition. With a = r21 / R and
// x = (1 + lambda) a, g (R / r21)^5 m3 / 2 tends to the Euler quintic
//   (m1 + m2) l^5 + (3 m1 + 2 m2) l^4 + (3 m1 + m2) l^3
//     - (m2 + 3 m3) l^2 - (2 m2 + 3 m3) l - (m2 + m3)
// with an O((r21 / R)^2) relative correction.

#ifndef S2RE_EULER_LIMIT_HPP
#define S2RE_EULER_LIMIT_HPP

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "s2re/masses.hpp"

namespace s2re {

using Quintic = Eigen::Matrix<double, 6, 1>;  // lambda^5 down to lambda^0

Quintic euler_quintic(const MassTriple& masses);

double evaluate_polynomial(const Quintic& coeffs, double lambda);

/// The unique positive root (one sign change in the coefficients).
double quintic_positive_root(const Quintic& coeffs);

/// g (R / r21)^5 m3 / 2 at x = (1 + lambda) a, a = r21 / R.
double scaled_g(double lambda, const MassTriple& masses, double r21, double radius);

struct EulerLimitRow {
  double radius = 0.0;
  Quintic fitted = Quintic::Zero();
  double max_coeff_deviation = 0.0;
  std::optional<double> root_lambda;  // meridian root as (x / a - 1)
  double root_deviation = 0.0;        // against the quintic root
};

struct EulerLimitReport {
  Quintic quintic = Quintic::Zero();
  double quintic_root = 0.0;
  std::vector<EulerLimitRow> rows;
  std::optional<double> order;  // least-squares slope of -log(deviation) in log R
};

EulerLimitReport euler_limit_check(const MassTriple& masses, double r21,
                                   std::span<const double> radii);

}  // namespace s2re

#endif  // S2RE_EULER_LIMIT_HPP

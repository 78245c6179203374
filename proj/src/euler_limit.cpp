#include "s2re/euler_limit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "s2re/meridian.hpp"
#include "s2re/root_scan.hpp"

namespace s2re {

Quintic euler_quintic(const MassTriple& m) {
  Quintic q;
  q << m[0] + m[1], 3 * m[0] + 2 * m[1], 3 * m[0] + m[1], -(m[1] + 3 * m[2]),
      -(2 * m[1] + 3 * m[2]), -(m[1] + m[2]);
  return q;
}

double evaluate_polynomial(const Quintic& c, double x) {
  double v = 0.0;
  for (int i = 0; i < 6; ++i) v = v * x + c[i];
  return v;
}

double quintic_positive_root(const Quintic& c) {
  if (c[0] == 0.0) throw std::invalid_argument("leading coefficient vanishes");
  Eigen::Matrix<double, 5, 5> companion = Eigen::Matrix<double, 5, 5>::Zero();
  companion.row(0) = -c.tail<5>().transpose() / c[0];
  companion.diagonal(-1).setOnes();
  const Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> es(companion, false);
  std::optional<double> best;
  for (const auto& z : es.eigenvalues())
    if (z.real() > 0.0 && std::abs(z.imag()) <= 1e-8 * std::abs(z)) {
      if (best) throw std::runtime_error("quintic has more than one positive root");
      best = z.real();
    }
  if (!best) throw std::runtime_error("quintic has no positive root");
  // A few Newton steps against the eigenvalue rounding.
  double x = *best;
  for (int it = 0; it < 3; ++it) {
    double p = 0.0, dp = 0.0;
    for (int i = 0; i < 6; ++i) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    if (dp == 0.0) break;
    x -= p / dp;
  }
  return x;
}

double scaled_g(double lambda, const MassTriple& m, double r21, double radius) {
  const double a = r21 / radius;
  const GFunctionParams p{a, m.nu1(), m.nu2(), 1, 1};
  return g_function((1.0 + lambda) * a, p) * std::pow(radius / r21, 5) * m[2] / 2.0;
}

EulerLimitReport euler_limit_check(const MassTriple& masses, double r21,
                                   std::span<const double> radii) {
  if (!(r21 > 0.0)) throw std::invalid_argument("r21 must be > 0");
  EulerLimitReport rep;
  rep.quintic = euler_quintic(masses);
  rep.quintic_root = quintic_positive_root(rep.quintic);

  constexpr int kFitPoints = 21;
  for (double radius : radii) {
    const double a = r21 / radius;
    if (!(a > 0.0 && a < std::numbers::pi / 3.0))
      throw std::invalid_argument("r21 / R must lie in (0, pi/3) for the region-II expansion");
    // x = (1 + lambda) a has to stay below pi.
    const double lam_cap = 0.999 * (std::numbers::pi / a - 1.0);
    const double lam_hi = std::min(2.0, lam_cap);

    Eigen::Matrix<double, kFitPoints, 6> V;
    Eigen::Matrix<double, kFitPoints, 1> y;
    for (int j = 0; j < kFitPoints; ++j) {
      const double lam = 0.05 + (lam_hi - 0.05) * j / (kFitPoints - 1);
      for (int i = 0; i < 6; ++i) V(j, i) = std::pow(lam, 5 - i);
      y[j] = scaled_g(lam, masses, r21, radius);
    }
    EulerLimitRow row;
    row.radius = radius;
    row.fitted = V.colPivHouseholderQr().solve(y);
    row.max_coeff_deviation = (row.fitted - rep.quintic).cwiseAbs().maxCoeff();

    const ScalarFunction f = [&](double lam) { return scaled_g(lam, masses, r21, radius); };
    ScanOptions so;
    so.boundary_exclusion = 1e-9;
    const auto roots = scan_roots(f, 0.0, std::min(10.0, lam_cap), so);
    for (const ScanRoot& r : roots)
      if (!row.root_lambda || std::abs(r.x - rep.quintic_root) < std::abs(*row.root_lambda - rep.quintic_root))
        row.root_lambda = r.x;
    row.root_deviation = row.root_lambda ? std::abs(*row.root_lambda - rep.quintic_root)
                                         : std::numeric_limits<double>::infinity();
    rep.rows.push_back(row);
  }

  // Slope of log(deviation) against log(R).
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rep.rows)
    if (r.max_coeff_deviation > 0.0)
      pts.emplace_back(std::log(r.radius), std::log(r.max_coeff_deviation));
  if (pts.size() >= 2) {
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx > 0) rep.order = -sxy / sxx;
  }
  return rep;
}

}  // namespace s2re

#ifndef S2RE_MASSES_HPP
#define S2RE_MASSES_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace s2re {

/// Three strictly positive masses and the ratios used throughout:
/// nu1 = m1/m3, nu2 = m2/m3 and mu_k = sqrt(m_i m_j) for (i, j, k) cyclic.
class MassTriple {
 public:
  MassTriple(double m1, double m2, double m3) : m_(m1, m2, m3) {
    for (int k = 0; k < 3; ++k)
      if (!(m_[k] > 0.0) || !std::isfinite(m_[k]))
        throw std::invalid_argument("mass m" + std::to_string(k + 1) +
                                    " must be finite and > 0");
  }
  explicit MassTriple(const Eigen::Vector3d& m) : MassTriple(m[0], m[1], m[2]) {}

  /// Masses from the two ratios with m3 = 1.
  static MassTriple from_ratios(double nu1, double nu2) { return {nu1, nu2, 1.0}; }

  double operator[](int k) const { return m_[k]; }
  const Eigen::Vector3d& vector() const { return m_; }
  double total() const { return m_.sum(); }

  double nu1() const { return m_[0] / m_[2]; }
  double nu2() const { return m_[1] / m_[2]; }

  /// mu_k with zero-based k: mu(0) = sqrt(m2 m3), mu(1) = sqrt(m3 m1),
  /// mu(2) = sqrt(m1 m2).
  double mu(int k) const {
    return std::sqrt(m_[(k + 1) % 3] * m_[(k + 2) % 3]);
  }
  Eigen::Vector3d mus() const { return {mu(0), mu(1), mu(2)}; }

  bool all_equal(double rel_tol = 1e-12) const {
    return (m_.maxCoeff() - m_.minCoeff()) <= rel_tol * m_.maxCoeff();
  }

 private:
  Eigen::Vector3d m_;
};

}  // namespace s2re

#endif  // S2RE_MASSES_HPP

// Pair potentials U(D^2) expressed in the squared chord length.
//
// The total force function is V = sum_{i<j} m_i m_j U(D_ij^2) and the
// Lagrangian is L = K + V, so an attractive potential has U'(D^2) < 0.

#ifndef S2RE_POTENTIAL_HPP
#define S2RE_POTENTIAL_HPP

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "s2re/geometry.hpp"
#include "s2re/masses.hpp"

namespace s2re {

enum class SingularityKind { Collision, Antipodal };

/// Raised when a pair sits on a singular point of the potential.
/// `pair()` is the zero-based pair index (0 = (1,2), 1 = (2,3), 2 = (3,1))
/// or -1 when the call concerned a single squared distance.
class SingularityError : public std::domain_error {
 public:
  SingularityError(SingularityKind kind, double d2, int pair = -1);
  SingularityKind kind() const { return kind_; }
  double squared_distance() const { return d2_; }
  int pair() const { return pair_; }
  SingularityError with_pair(int pair) const { return {kind_, d2_, pair}; }

 private:
  SingularityKind kind_;
  double d2_;
  int pair_;
};

/// Contract for U(D^2) and dU/d(D^2).
class PairPotential {
 public:
  virtual ~PairPotential() = default;

  virtual double u(double d2) const = 0;
  virtual double u_prime(double d2) const = 0;
  virtual std::string name() const = 0;

  /// +1 for the cotangent potential, -1 for its repulsive mirror and empty
  /// for anything else. The meridian solver uses this to pick its scan
  /// function.
  virtual std::optional<int> cotangent_orientation() const { return std::nullopt; }
};

using PotentialPtr = std::shared_ptr<const PairPotential>;

/// U = (1/R) cot(sigma), written in D^2 with epsilon = 1/(2R).
class CotangentPotential final : public PairPotential {
 public:
  explicit CotangentPotential(SphereRadius r = SphereRadius{}) : r_(r) {}

  double u(double d2) const override;
  double u_prime(double d2) const override;
  std::string name() const override { return "cotangent"; }
  std::optional<int> cotangent_orientation() const override { return 1; }

  const SphereRadius& radius() const { return r_; }

 private:
  SphereRadius r_;
};

/// -U for a wrapped potential U.
class RepulsivePotential final : public PairPotential {
 public:
  explicit RepulsivePotential(PotentialPtr inner) : inner_(std::move(inner)) {
    if (!inner_) throw std::invalid_argument("null inner potential");
  }

  double u(double d2) const override { return -inner_->u(d2); }
  double u_prime(double d2) const override { return -inner_->u_prime(d2); }
  std::string name() const override { return "repulsive-" + inner_->name(); }
  std::optional<int> cotangent_orientation() const override {
    auto o = inner_->cotangent_orientation();
    if (o) return -*o;
    return std::nullopt;
  }

  const PotentialPtr& inner() const { return inner_; }

 private:
  PotentialPtr inner_;
};

PotentialPtr make_cotangent(SphereRadius r = SphereRadius{});
PotentialPtr make_repulsive(PotentialPtr inner);

/// Closed forms used by the contract and by tests as a cross-check.
double cotangent_u(double d2, const SphereRadius& r);
double cotangent_u_prime(double d2, const SphereRadius& r);

/// (1/R) cot(sigma) and -1/(2 R^3 sin^3 sigma), written in the arc angle.
template <typename Scalar>
Scalar cotangent_u_from_arc(Scalar sigma, Scalar r) {
  using std::tan;
  return 1 / (r * tan(sigma));
}
template <typename Scalar>
Scalar cotangent_u_prime_from_arc(Scalar sigma, Scalar r) {
  using std::sin;
  const Scalar s = sin(sigma);
  return -1 / (2 * r * r * r * s * s * s);
}

/// Centered finite difference of u at d2 with step h; test and diagnostic aid.
double finite_difference_u_prime(const PairPotential& pot, double d2, double h);

/// V = sum over the three unordered pairs (1,2), (2,3), (3,1).
double total_potential(const std::array<SpherePoint, 3>& points, const MassTriple& masses,
                       const PairPotential& pot, const SphereRadius& r);

}  // namespace s2re

#endif  // S2RE_POTENTIAL_HPP

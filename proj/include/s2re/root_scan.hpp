// Bracketing root search for smooth scalar functions on an interval:
// dense sampling, bisection on sign changes and a golden-section probe at
// interior minima of |f| to pick up tangent (even-multiplicity) zeros and
// close root pairs that fall between two samples.

#ifndef S2RE_ROOT_SCAN_HPP
#define S2RE_ROOT_SCAN_HPP

#include <functional>
#include <span>
#include <vector>

namespace s2re {

using ScalarFunction = std::function<double(double)>;

struct ScanOptions {
  std::size_t samples = 2000;
  double boundary_exclusion = 1e-8;  // distance kept from both interval ends
  double root_tol = 1e-13;           // bracket width at which bisection stops
  double merge_tol = 1e-10;          // roots closer than this are one root
  double tangent_tol = 1e-11;        // |f| at a touching minimum, relative to max |f|
};

struct ScanRoot {
  double x = 0.0;
  double value = 0.0;
  bool tangent = false;
};

/// Sample abscissae used by scan_roots: `samples` points spanning
/// [lo + exclusion, hi - exclusion].
std::vector<double> sample_grid(double lo, double hi, const ScanOptions& options);

/// Roots of f in (lo, hi) away from the excluded end zones. `values` holds f
/// at sample_grid(lo, hi, options); f itself is used for refinement. When a
/// derivative is given, touching roots are polished by bisecting f' instead
/// of stopping at the golden-section estimate (good to about sqrt(eps)).
std::vector<ScanRoot> scan_roots(const ScalarFunction& f, double lo, double hi,
                                 std::span<const double> values, const ScanOptions& options,
                                 const ScalarFunction& derivative = {});

std::vector<ScanRoot> scan_roots(const ScalarFunction& f, double lo, double hi,
                                 const ScanOptions& options,
                                 const ScalarFunction& derivative = {});

/// Bisection on a sign-changing bracket followed by one false-position step
/// inside the final bracket.
double bisect(const ScalarFunction& f, double a, double b, double fa, double fb, double tol);

/// Golden-section minimum of f on [a, b].
double golden_minimize(const ScalarFunction& f, double a, double b, double tol);

}  // namespace s2re

#endif  // S2RE_ROOT_SCAN_HPP

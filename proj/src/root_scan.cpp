#include "s2re/root_scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s2re {

std::vector<double> sample_grid(double lo, double hi, const ScanOptions& options) {
  if (options.samples < 3) throw std::invalid_argument("need at least 3 samples");
  const double a = lo + options.boundary_exclusion;
  const double b = hi - options.boundary_exclusion;
  if (!(b > a)) throw std::invalid_argument("interval narrower than the exclusion zones");
  std::vector<double> xs(options.samples);
  const double n = static_cast<double>(options.samples - 1);
  for (std::size_t i = 0; i < options.samples; ++i)
    xs[i] = a + (b - a) * (static_cast<double>(i) / n);
  xs.back() = b;
  return xs;
}

double bisect(const ScalarFunction& f, double a, double b, double fa, double fb, double tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) throw std::invalid_argument("bracket does not change sign");
  while (std::abs(b - a) > tol) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  const double x = a - fa * (b - a) / (fb - fa);
  return std::clamp(x, std::min(a, b), std::max(a, b));
}

double golden_minimize(const ScalarFunction& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  return fc < fd ? c : d;
}

namespace {

// Touching root near xm: the zero of f' inside [a, b] when f' changes sign
// there, else xm itself.
double polish_tangent(const ScalarFunction& df, double a, double b, double xm, double tol) {
  if (!df) return xm;
  const double da = df(a), db = df(b);
  if (da == 0.0 || db == 0.0 || (da < 0) == (db < 0)) return xm;
  return bisect(df, a, b, da, db, tol);
}

}  // namespace

std::vector<ScanRoot> scan_roots(const ScalarFunction& f, double lo, double hi,
                                 std::span<const double> values, const ScanOptions& options,
                                 const ScalarFunction& derivative) {
  const std::vector<double> xs = sample_grid(lo, hi, options);
  if (values.size() != xs.size()) throw std::invalid_argument("sample count mismatch");
  const std::size_t n = xs.size();

  double fmax = 0.0;
  for (double v : values) fmax = std::max(fmax, std::abs(v));
  const double flat = options.tangent_tol * fmax;

  std::vector<ScanRoot> roots;
  auto add_bracket = [&](double a, double b, double fa, double fb) {
    const double x = bisect(f, a, b, fa, fb, options.root_tol);
    roots.push_back({x, f(x), false});
  };

  for (std::size_t i = 0; i < n; ++i)
    if (values[i] == 0.0) roots.push_back({xs[i], 0.0, false});

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (values[i] != 0.0 && values[i + 1] != 0.0 && (values[i] < 0) != (values[i + 1] < 0))
      add_bracket(xs[i], xs[i + 1], values[i], values[i + 1]);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double vl = values[i - 1], v = values[i], vr = values[i + 1];
    if (v == 0.0 || (vl < 0) != (v < 0) || (vr < 0) != (v < 0)) continue;
    if (!(std::abs(v) <= std::abs(vl) && std::abs(v) <= std::abs(vr))) continue;
    const double sgn = v < 0 ? -1.0 : 1.0;
    const ScalarFunction signed_f = [&](double x) { return sgn * f(x); };
    const double xm = golden_minimize(signed_f, xs[i - 1], xs[i + 1], 1e-13);
    const double vm = f(xm);
    // A dip that only just reaches zero is one double root; the pair it may
    // split into under rounding is not resolvable.
    if (std::abs(vm) <= flat) {
      const double xt = polish_tangent(derivative, xs[i - 1], xs[i + 1], xm, options.root_tol);
      roots.push_back({xt, f(xt), true});
    } else if (sgn * vm < 0.0) {
      add_bracket(xs[i - 1], xm, vl, vm);
      add_bracket(xm, xs[i + 1], vm, vr);
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const ScanRoot& a, const ScanRoot& b) { return a.x < b.x; });
  std::vector<ScanRoot> merged;
  for (const ScanRoot& r : roots) {
    if (!merged.empty()) {
      ScanRoot& last = merged.back();
      const double gap = r.x - last.x;
      const bool same = gap <= options.merge_tol ||
                        (gap <= 1e-6 && std::abs(f(0.5 * (r.x + last.x))) <= flat);
      if (same) {
        const bool tangent = last.tangent || r.tangent || gap > options.merge_tol;
        if (std::abs(r.value) < std::abs(last.value)) last = r;
        last.tangent = tangent;
        continue;
      }
    }
    merged.push_back(r);
  }
  const double a = lo + options.boundary_exclusion, b = hi - options.boundary_exclusion;
  std::erase_if(merged, [&](const ScanRoot& r) { return r.x < a || r.x > b; });
  return merged;
}

std::vector<ScanRoot> scan_roots(const ScalarFunction& f, double lo, double hi,
                                 const ScanOptions& options, const ScalarFunction& derivative) {
  const std::vector<double> xs = sample_grid(lo, hi, options);
  std::vector<double> values(xs.size());
  std::transform(xs.begin(), xs.end(), values.begin(), f);
  return scan_roots(f, lo, hi, values, options, derivative);
}

}  // namespace s2re

#include "s2re/meridian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/AutoDiff>

#include "s2re/families.hpp"
#include "s2re/geometry.hpp"

namespace s2re {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShapeSingularTol = 1e-14;

// Distance of x (in [0, 2 pi)) to the nearest of 0, a, pi, a + pi, 2 pi.
double singular_distance(double x, double a) {
  double d = std::min(x, 2.0 * kPi - x);
  for (double b : {a, kPi, a + kPi}) d = std::min(d, std::abs(x - b));
  return d;
}

std::string format_shape(double a, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "(a = " << a << ", x = " << x << ")";
  return os.str();
}

}  // namespace

std::string to_string(Region region) {
  switch (region) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
  }
  return "?";
}

std::optional<Region> region_from_string(const std::string& name) {
  for (Region r : kAllRegions)
    if (to_string(r) == name) return r;
  return std::nullopt;
}

Interval region_interval(Region region, double a) {
  switch (region) {
    case Region::I: return {0.0, a};
    case Region::II: return {a, kPi};
    case Region::III: return {kPi, kPi + a};
    case Region::IV: return {kPi + a, 2.0 * kPi};
  }
  throw std::logic_error("bad region");
}

std::optional<Region> region_of(double x, double a, double boundary_tol) {
  const double y = wrap_two_pi(x);
  if (singular_distance(y, a) <= boundary_tol) return std::nullopt;
  for (Region r : kAllRegions) {
    const Interval iv = region_interval(r, a);
    if (y > iv.lo && y < iv.hi) return r;
  }
  return std::nullopt;
}

RegionSigns region_signs(Region region) {
  switch (region) {
    case Region::I: return {1, -1};
    case Region::II: return {1, 1};
    case Region::III: return {-1, 1};
    case Region::IV: return {-1, -1};
  }
  throw std::logic_error("bad region");
}

Shape::Shape(double a, double x) : a_(a), x_(wrap_two_pi(x)) {
  if (!(a > 0.0 && a < kPi)) throw std::invalid_argument("a = theta2 - theta1 must lie in (0, pi)");
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  if (singular_distance(x_, a_) <= kShapeSingularTol)
    throw std::invalid_argument("shape " + format_shape(a_, x_) + " sits on a singular point");
}

Region Shape::region() const {
  auto r = region_of(x_, a_);
  if (!r) throw std::logic_error("shape on a region boundary");
  return *r;
}

double amplitude_A(const MassTriple& m, double t21, double t31) {
  // Modulus of the complex sum rather than the expanded square: the latter
  // cancels badly when A is small and its error passes straight into omega^2.
  const std::complex<double> z =
      m[0] + m[1] * std::polar(1.0, 2.0 * t21) + m[2] * std::polar(1.0, 2.0 * t31);
  return std::abs(z);
}

double amplitude_A(const MassTriple& masses, const Shape& shape) {
  return amplitude_A(masses, shape.a(), shape.x());
}

AmplitudeZero::AmplitudeZero(double amplitude)
    : std::domain_error("A = 0: the shape does not fix the colatitudes (fixed point)"),
      amplitude_(amplitude) {}

MeridianTranslation shape_to_configurations(const MassTriple& m, const Shape& shape, int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("branch sign must be +1 or -1");
  using C = std::complex<double>;
  const C z = m[0] + m[1] * std::polar(1.0, 2.0 * shape.a()) +
              m[2] * std::polar(1.0, 2.0 * shape.x());
  const double amp = std::abs(z);
  if (amp <= kAmplitudeZeroTolerance * m.total()) throw AmplitudeZero(amp);

  MeridianTranslation t;
  t.amplitude = amp;
  t.alpha = 0.5 * std::arg(z);
  t.s = s;
  // e^{2i theta_1} = s conj(z) / A, then rotate by the shape.
  const C w1 = static_cast<double>(s) * std::conj(z) / amp;
  const std::array<double, 3> d = shape.reference_thetas();
  for (int k = 0; k < 3; ++k) {
    const C wk = w1 * std::polar(1.0, 2.0 * d[k]);
    t.sin2theta[k] = wk.imag();
    t.cos2theta[k] = wk.real();
  }
  const double theta1 = 0.5 * std::atan2(t.sin2theta[0], t.cos2theta[0]);
  for (int k = 0; k < 3; ++k) {
    t.theta[k] = wrap_pi(theta1 + d[k]);
    t.theta_alt[k] = wrap_pi(theta1 + kPi + d[k]);
  }
  for (int k = 1; k < 3; ++k) {
    const double es = std::abs(std::sin(2.0 * t.theta[k]) - t.sin2theta[k]);
    const double ec = std::abs(std::cos(2.0 * t.theta[k]) - t.cos2theta[k]);
    if (es > 1e-10 || ec > 1e-10) throw std::logic_error("translation lift is inconsistent");
  }
  return t;
}

PairQuantities pair_quantities(const MassTriple& m, const Shape& shape, const PairPotential& pot,
                               const SphereRadius& r) {
  const std::array<double, 3> th = shape.reference_thetas();
  constexpr int I[3] = {0, 1, 2}, J[3] = {1, 2, 0};
  PairQuantities pq;
  for (int q = 0; q < 3; ++q) {
    const int i = I[q], j = J[q];
    const double d = th[j] - th[i];
    const double d2 = chord_squared(SpherePoint{th[i], 0.0}, SpherePoint{th[j], 0.0}, r);
    double up = 0.0;
    try {
      up = pot.u_prime(d2);
    } catch (const SingularityError& e) {
      throw e.with_pair(q);
    }
    pq.F[q] = -2.0 * m[i] * m[j] * std::sin(d) * up;
    pq.G[q] = m[i] * m[j] * std::sin(2.0 * d);
  }
  return pq;
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
    case CaseTag::Case4FixedPoint: return "Case4-fixed-point";
    case CaseTag::AZeroFixedPoint: return "A-zero-fixed-point";
  }
  return "?";
}

std::optional<CaseTag> case_from_string(const std::string& name) {
  for (CaseTag t : {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3, CaseTag::Case4FixedPoint,
                    CaseTag::AZeroFixedPoint})
    if (to_string(t) == name) return t;
  return std::nullopt;
}

CaseTag classify_case(const PairQuantities& pq, const MassTriple& m, double tol) {
  const bool z1 = std::abs((pq.G[0] - pq.G[1]) / (m[1] * m[2])) < tol;
  const bool z2 = std::abs((pq.G[2] - pq.G[0]) / (m[0] * m[2])) < tol;
  if (z1 && z2) return CaseTag::Case4FixedPoint;
  if (z1) return CaseTag::Case2;
  if (z2) return CaseTag::Case3;
  return CaseTag::Case1;
}

OmegaBranch solve_omega_and_branch(const PairQuantities& pq, const MassTriple& m,
                                   double amplitude, CaseTag tag, double tol) {
  (void)m;
  const Eigen::Vector3d dF = pq.dF(), dG = pq.dG();
  const double scale = std::max(pq.F.cwiseAbs().maxCoeff(), 1e-300);
  OmegaBranch out;

  if (tag == CaseTag::Case4FixedPoint || tag == CaseTag::AZeroFixedPoint) {
    out.inconsistency = dF.cwiseAbs().maxCoeff() / scale;
    if (out.inconsistency > tol)
      throw NotARotator("F values differ on a shape with equal G values");
    return out;
  }

  const double k = dG.dot(dF) / dG.squaredNorm();
  out.ratio = k;
  out.inconsistency = (dF - k * dG).cwiseAbs().maxCoeff() / scale;
  if (out.inconsistency > tol) {
    std::ostringstream os;
    os << "rotator equations disagree (relative misfit " << out.inconsistency << ")";
    throw NotARotator(os.str());
  }
  // A vanishing ratio leaves all F equal: a fixed point with any s.
  if (std::abs(k) * dG.cwiseAbs().maxCoeff() <= tol * scale) return out;
  out.s = k > 0 ? 1 : -1;
  out.omega_squared = 2.0 * amplitude * std::abs(k);
  return out;
}

GFunctionParams GFunctionParams::for_region(double a, double nu1, double nu2, Region region) {
  const RegionSigns sg = region_signs(region);
  return {a, nu1, nu2, sg.alpha, sg.beta};
}

double g_derivative(double x, const GFunctionParams& params) {
  using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;
  const AD xa(x, 1, 0);
  return g_function(xa, params).derivatives()[0];
}

double g_value(double x, double a, double nu1, double nu2) {
  GFunctionParams p{a, nu1, nu2, std::sin(x) < 0 ? -1 : 1, std::sin(x - a) < 0 ? -1 : 1};
  return g_function(x, p);
}

void g_samples(std::span<const double> xs, const GFunctionParams& p, std::span<double> out) {
  if (out.size() != xs.size()) throw std::invalid_argument("output size mismatch");
  const std::size_t n = xs.size();
  if (n == 0) return;
  const double h = n > 1 ? xs[1] - xs[0] : 0.0;
  const double ch = std::cos(h), sh = std::sin(h);
  const double ca = std::cos(p.a), sa = std::sin(p.a);
  const double sa2 = sa * sa, s2a = std::sin(2.0 * p.a);
  const double al = p.alpha, be = p.beta;
  double c = 0.0, s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Rotate (cos x, sin x) forward and re-anchor now and then so rounding
    // cannot build up.
    if (i % 64 == 0) {
      c = std::cos(xs[i]);
      s = std::sin(xs[i]);
    } else {
      const double cn = c * ch - s * sh;
      s = s * ch + c * sh;
      c = cn;
    }
    const double sxa = s * ca - c * sa, cxa = c * ca + s * sa;
    const double sx2 = s * s, sxa2 = sxa * sxa;
    const double s2x = 2.0 * s * c, s2xa = 2.0 * sxa * cxa;
    out[i] = al * be * sx2 * sxa2 * (p.nu1 * s2x + p.nu2 * s2xa) -
             sa2 * (al * sx2 * s2x - be * sxa2 * s2xa) -
             sa2 * s2a * (p.nu2 * al * sx2 + p.nu1 * be * sxa2);
  }
}

double rotator_condition(double x, double a, const MassTriple& masses, const PairPotential& pot,
                         const SphereRadius& r) {
  const Shape shape(a, x);
  const PairQuantities pq = pair_quantities(masses, shape, pot, r);
  const double c = (pq.F[0] - pq.F[1]) * (pq.G[2] - pq.G[0]) -
                   (pq.F[2] - pq.F[0]) * (pq.G[0] - pq.G[1]);
  const double sx = std::sin(shape.x()), sxa = std::sin(shape.theta32());
  return c * sx * sx * sxa * sxa;
}

PotentialPtr MeridianOptions::resolved_potential() const {
  return potential ? potential : make_cotangent(radius);
}

double MeridianSolution::omega() const {
  return omega_squared ? std::sqrt(*omega_squared) : 0.0;
}

RECandidate MeridianSolution::candidate(SphereRadius r) const {
  RECandidate c;
  for (int k = 0; k < 3; ++k) c.points[k] = {theta[k], 0.0};
  c.omega = omega();
  c.radius = r;
  return c;
}

RECandidate MeridianSolution::candidate_alt(SphereRadius r) const {
  RECandidate c = candidate(r);
  for (int k = 0; k < 3; ++k) c.points[k].theta = theta_alt[k];
  return c;
}

ShapeResolution resolve_shape(const MassTriple& masses, const Shape& shape,
                              const MeridianOptions& options) {
  const PotentialPtr pot = options.resolved_potential();
  ShapeResolution res;
  MeridianSolution sol;
  sol.shape = shape;
  sol.region = shape.region();

  PairQuantities pq;
  try {
    pq = pair_quantities(masses, shape, *pot, options.radius);
  } catch (const SingularityError& e) {
    res.reason = e.what();
    return res;
  }

  const double amp = amplitude_A(masses, shape);
  sol.amplitude = amp;
  const bool a_zero = amp <= kAmplitudeZeroTolerance * masses.total();
  sol.case_tag = a_zero ? CaseTag::AZeroFixedPoint : classify_case(pq, masses, options.case_tol);

  OmegaBranch ob;
  try {
    ob = solve_omega_and_branch(pq, masses, amp, sol.case_tag, options.rotator_tol);
  } catch (const NotARotator& e) {
    res.reason = e.what();
    return res;
  }
  // An A = 0 shape with a nonzero rate cannot satisfy c_x = c_y = 0.
  if (a_zero && !ob.fixed_point()) {
    res.reason = "A = 0 but the shape needs a nonzero rate";
    return res;
  }

  if (ob.fixed_point()) {
    // No axis is singled out: keep the reference placement.
    sol.s = 1;
    const std::array<double, 3> d = shape.reference_thetas();
    for (int k = 0; k < 3; ++k) {
      sol.theta[k] = wrap_pi(d[k]);
      sol.theta_alt[k] = wrap_pi(d[k] + kPi);
    }
    if (sol.case_tag == CaseTag::Case1 || sol.case_tag == CaseTag::Case2 ||
        sol.case_tag == CaseTag::Case3)
      sol.case_tag = CaseTag::Case4FixedPoint;
  } else {
    sol.s = ob.s;
    sol.omega_squared = ob.omega_squared;
    const MeridianTranslation t = shape_to_configurations(masses, shape, ob.s);
    sol.theta = t.theta;
    sol.theta_alt = t.theta_alt;
  }

  try {
    sol.residual = re_residuals(sol.candidate(options.radius), masses, *pot).max_norm();
    sol.residual_alt = re_residuals(sol.candidate_alt(options.radius), masses, *pot).max_norm();
  } catch (const SingularityError& e) {
    res.reason = e.what();
    return res;
  }
  if (!(sol.residual < options.residual_tol && sol.residual_alt < options.residual_tol)) {
    std::ostringstream os;
    os << "residual " << std::max(sol.residual, sol.residual_alt) << " above tolerance";
    res.reason = os.str();
    return res;
  }
  res.solution = sol;
  return res;
}

std::array<int, 4> MeridianSearch::counts_per_region() const {
  std::array<int, 4> c{};
  for (const auto& s : solutions) ++c[static_cast<int>(s.region)];
  return c;
}

std::vector<std::pair<Region, ScanRoot>> meridian_shape_roots(double a, const MassTriple& masses,
                                                              const MeridianOptions& options) {
  if (!(a > 0.0 && a < kPi)) throw std::invalid_argument("a = theta2 - theta1 must lie in (0, pi)");
  const PotentialPtr pot = options.resolved_potential();
  const bool use_g =
      options.scan_function == ScanFunction::CotangentG ||
      (options.scan_function == ScanFunction::Auto && pot->cotangent_orientation().has_value());
  const double nu1 = masses.nu1(), nu2 = masses.nu2();

  std::vector<std::pair<Region, ScanRoot>> out;
  std::vector<double> values;
  for (Region region : kAllRegions) {
    const Interval iv = region_interval(region, a);
    std::vector<ScanRoot> roots;
    if (use_g) {
      const std::vector<double> xs = sample_grid(iv.lo, iv.hi, options.scan);
      values.resize(xs.size());
      const GFunctionParams p = GFunctionParams::for_region(a, nu1, nu2, region);
      g_samples(xs, p, values);
      roots = scan_roots([&](double x) { return g_function(x, p); }, iv.lo, iv.hi, values,
                         options.scan, [&](double x) { return g_derivative(x, p); });
    } else {
      const ScalarFunction f = [&](double x) {
        return rotator_condition(x, a, masses, *pot, options.radius);
      };
      // Within ~1e-8 of pi the chord rounds to the full diameter, so the
      // D^2-based potential needs a wider margin than the g scan.
      ScanOptions scan = options.scan;
      scan.boundary_exclusion = std::max(scan.boundary_exclusion, kGenericScanExclusion);
      const std::vector<double> gxs = sample_grid(iv.lo, iv.hi, scan);
      values.resize(gxs.size());
      std::transform(gxs.begin(), gxs.end(), values.begin(), f);
      const double lo = iv.lo + scan.boundary_exclusion;
      const double hi = iv.hi - scan.boundary_exclusion;
      const ScalarFunction df = [&](double x) {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        const double xl = std::max(lo, x - h), xr = std::min(hi, x + h);
        return (f(xr) - f(xl)) / (xr - xl);
      };
      roots = scan_roots(f, iv.lo, iv.hi, values, scan, df);
    }
    for (const ScanRoot& r : roots) out.emplace_back(region, r);
  }
  return out;
}

MeridianSearch find_meridian_rotators(double a, const MassTriple& masses,
                                      const MeridianOptions& options) {
  MeridianSearch search;
  const auto roots = meridian_shape_roots(a, masses, options);

  struct Candidate {
    double x;
    bool tangent;
    bool closed_form;
  };
  std::vector<Candidate> candidates;
  for (const auto& [region, r] : roots) candidates.push_back({r.x, r.tangent, false});

  if (options.include_exceptional) {
    const double excl = options.scan.boundary_exclusion;
    auto add_closed_form = [&](ExceptionalCase which, double nu) {
      for (const ExceptionalBranch& b : exceptional_case_angles(which, nu)) {
        if (std::abs(b.shape.a() - a) > options.exceptional_match_tol) continue;
        const double x = b.shape.x();
        if (!region_of(x, a, excl)) continue;
        const bool known = std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) {
          return std::abs(c.x - x) < 1e-8;
        });
        if (!known) candidates.push_back({x, false, true});
      }
    };
    add_closed_form(ExceptionalCase::Case2, masses.nu1());
    add_closed_form(ExceptionalCase::Case3, masses.nu2());
  }

  for (const Candidate& c : candidates) {
    // Closed-form shapes carry the exact a of the formula; the solution is
    // reported for the requested a.
    ShapeResolution r = resolve_shape(masses, Shape(a, c.x), options);
    if (!r.solution) {
      search.rejected.push_back({c.x, r.reason});
      continue;
    }
    r.solution->tangent_root = c.tangent;
    r.solution->from_closed_form = c.closed_form;
    search.solutions.push_back(*r.solution);
  }
  std::sort(search.solutions.begin(), search.solutions.end(),
            [](const MeridianSolution& l, const MeridianSolution& r) {
              return l.shape.x() < r.shape.x();
            });
  return search;
}

std::vector<SweepRow> sweep_counts(std::span<const double> a_values,
                                   std::span<const double> nu1_values,
                                   std::span<const double> nu2_values,
                                   const MeridianOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(a_values.size() * nu1_values.size() * nu2_values.size());
  for (double a : a_values)
    for (double nu1 : nu1_values)
      for (double nu2 : nu2_values) {
        const MeridianSearch s = find_meridian_rotators(a, MassTriple::from_ratios(nu1, nu2), options);
        SweepRow row;
        row.a = a;
        row.nu1 = nu1;
        row.nu2 = nu2;
        row.counts = s.counts_per_region();
        row.rejected = static_cast<int>(s.rejected.size());
        rows.push_back(row);
      }
  return rows;
}

}  // namespace s2re

// JSON and CSV forms of solver results, and reading solutions back for
// verification. Doubles are written with 17 significant digits so that a
// file read back reproduces the same residuals bit for bit.

#ifndef S2RE_IO_HPP
#define S2RE_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "s2re/dynamics.hpp"
#include "s2re/equator.hpp"
#include "s2re/euler_limit.hpp"
#include "s2re/meridian.hpp"

namespace s2re {

nlohmann::json to_json(const MeridianSolution& sol);
nlohmann::json to_json(const std::vector<MeridianSolution>& sols);

/// Includes the body placement (theta all pi/2, phi_1 = 0) so that the
/// object can be fed to verification directly.
nlohmann::json to_json(const EquatorSolution& sol);

inline constexpr const char* kMeridianCsvHeader =
    "a,nu1,nu2,region,x,theta1,theta2,theta3,s,omega_squared,residual";

std::string meridian_csv(const std::vector<MeridianSolution>& sols, const MassTriple& masses);
std::string equator_csv(const EquatorSolution& sol);

/// One row per grid point, then a "# max_count,<n>" footer.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// R, max_coeff_deviation, root_deviation rows, then "# order,<p>".
std::string euler_limit_csv(const EulerLimitReport& report);

/// Full-precision decimal form used by the CSV writers.
std::string format_double(double v);

struct VerifyItem {
  std::string label;
  RECandidate candidate;
};

/// Solutions from a meridian array or a single equator object. Each entry
/// needs "theta" and may carry "phi" and "omega_squared"; entries with a
/// "theta_alt" field yield a second item for the antipodal lift. A missing
/// or null rate takes `default_omega`. Throws std::runtime_error on bad input.
std::vector<VerifyItem> parse_verify_items(const nlohmann::json& doc, SphereRadius r,
                                           double default_omega);

}  // namespace s2re

#endif  // S2RE_IO_HPP

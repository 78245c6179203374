#include "s2re/io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace s2re {

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::json triple(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }

nlohmann::json over_pi(const std::array<double, 3>& v) {
  return {v[0] / kPi, v[1] / kPi, v[2] / kPi};
}

std::array<double, 3> read_triple(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw std::runtime_error(std::string("\"") + key +
                                                               "\" must hold three numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

nlohmann::json to_json(const MeridianSolution& sol) {
  nlohmann::json j;
  j["region"] = to_string(sol.region);
  j["a"] = sol.shape.a();
  j["x"] = sol.shape.x();
  j["x_over_pi"] = sol.shape.x() / kPi;
  j["theta"] = triple(sol.theta);
  j["theta_alt"] = triple(sol.theta_alt);
  j["theta_over_pi"] = over_pi(sol.theta);
  j["theta_alt_over_pi"] = over_pi(sol.theta_alt);
  j["s"] = sol.s;
  j["omega_squared"] = sol.omega_squared ? nlohmann::json(*sol.omega_squared) : nlohmann::json();
  j["amplitude"] = sol.amplitude;
  j["case"] = to_string(sol.case_tag);
  j["residual"] = sol.residual;
  j["residual_alt"] = sol.residual_alt;
  if (sol.tangent_root) j["tangent_root"] = true;
  return j;
}

nlohmann::json to_json(const std::vector<MeridianSolution>& sols) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : sols) arr.push_back(to_json(s));
  return arr;
}

nlohmann::json to_json(const EquatorSolution& sol) {
  nlohmann::json j;
  j["exists"] = sol.exists;
  j["region"] = to_string(sol.existence.region);
  if (sol.existence.violated >= 0) j["violated"] = sol.existence.inequality();
  if (!sol.exists) return j;
  j["dphi_12"] = sol.dphi_12;
  j["dphi_23"] = sol.dphi_23;
  j["dphi_31"] = sol.dphi_31;
  j["rho"] = sol.rho;
  j["negV"] = sol.neg_potential_energy;
  const RECandidate c = sol.candidate(0.0);
  j["theta"] = {c.points[0].theta, c.points[1].theta, c.points[2].theta};
  j["phi"] = {c.points[0].phi, c.points[1].phi, c.points[2].phi};
  return j;
}

std::string meridian_csv(const std::vector<MeridianSolution>& sols, const MassTriple& m) {
  std::ostringstream os;
  os << kMeridianCsvHeader << '\n';
  for (const auto& s : sols) {
    os << format_double(s.shape.a()) << ',' << format_double(m.nu1()) << ','
       << format_double(m.nu2()) << ',' << to_string(s.region) << ','
       << format_double(s.shape.x());
    for (double t : s.theta) os << ',' << format_double(t);
    os << ',' << s.s << ',' << (s.omega_squared ? format_double(*s.omega_squared) : "") << ','
       << format_double(s.residual) << '\n';
  }
  return os.str();
}

std::string equator_csv(const EquatorSolution& sol) {
  std::ostringstream os;
  os << "exists,region,dphi_12,dphi_23,dphi_31,rho,negV\n";
  if (!sol.exists) {
    os << "false," << to_string(sol.existence.region) << ",,,,,\n";
    return os.str();
  }
  os << "true," << to_string(sol.existence.region) << ','
     << format_double(sol.dphi_12) << ',' << format_double(sol.dphi_23) << ','
     << format_double(sol.dphi_31) << ',' << format_double(sol.rho) << ','
     << format_double(sol.neg_potential_energy) << '\n';
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "a,nu1,nu2,count,count_I,count_II,count_III,count_IV,rejected\n";
  int max_count = 0;
  for (const auto& r : rows) {
    os << format_double(r.a) << ',' << format_double(r.nu1) << ',' << format_double(r.nu2) << ','
       << r.total();
    for (int c : r.counts) os << ',' << c;
    os << ',' << r.rejected << '\n';
    max_count = std::max(max_count, r.total());
  }
  os << "# max_count," << max_count << '\n';
  return os.str();
}

std::string euler_limit_csv(const EulerLimitReport& rep) {
  std::ostringstream os;
  os << "R,max_coeff_deviation,root_deviation\n";
  for (const auto& r : rep.rows)
    os << format_double(r.radius) << ',' << format_double(r.max_coeff_deviation) << ','
       << format_double(r.root_deviation) << '\n';
  os << "# quintic_root," << format_double(rep.quintic_root) << '\n';
  os << "# order," << (rep.order ? format_double(*rep.order) : "nan") << '\n';
  return os.str();
}

std::vector<VerifyItem> parse_verify_items(const nlohmann::json& doc, SphereRadius r,
                                           double default_omega) {
  const nlohmann::json arr = doc.is_array() ? doc : nlohmann::json::array({doc});
  std::vector<VerifyItem> out;
  try {
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const auto& j = arr[n];
      if (!j.is_object()) throw std::runtime_error("solution entries must be objects");
      double omega = default_omega;
      if (j.contains("omega_squared") && !j["omega_squared"].is_null()) {
        const double w2 = j["omega_squared"].get<double>();
        if (w2 < 0) throw std::runtime_error("omega_squared must be >= 0");
        omega = std::sqrt(w2);
      }
      const std::array<double, 3> phi =
          j.contains("phi") ? read_triple(j, "phi") : std::array<double, 3>{0.0, 0.0, 0.0};
      auto make = [&](const char* key, const std::string& label) {
        const std::array<double, 3> th = read_triple(j, key);
        VerifyItem item;
        item.label = label;
        item.candidate.omega = omega;
        item.candidate.radius = r;
        for (int k = 0; k < 3; ++k) item.candidate.points[k] = {th[k], phi[k]};
        out.push_back(item);
      };
      make("theta", std::to_string(n));
      if (j.contains("theta_alt")) make("theta_alt", std::to_string(n) + "-alt");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed solution file: ") + e.what());
  }
  return out;
}

}  // namespace s2re

#include "sklyanin/config.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sklyanin/types.hpp"

namespace skl {

RatPair RunConfig::tau() const { return RatPair{Rational(a, n), Rational(b, n)}; }

void RunConfig::validate() const {
  lattice().validate();
  if (n <= 0) throw Error(Errc::precondition, "torsion order n must be positive");
  if (n == 1 || n == 2 || n == 4) throw Error(Errc::unsupported_torsion, "n must not be 1, 2 or 4");
  if (std::gcd(std::gcd(a, b), n) != 1)
    throw Error(Errc::precondition, "gcd(a, b, n) must be 1 so that tau has order exactly n");
  if (dmax != 0 && dmax < 2 * s() + 4)
    throw Error(Errc::precondition, "dmax must be at least 2s+4 = " + std::to_string(2 * s() + 4));
  if (algebra_dmax < 3) throw Error(Errc::precondition, "algebra_dmax must be at least 3");
  if (!(tol_rank > 0.0 && tol_rank < 1e-2) || !(tol_residual > 0.0 && tol_residual < 1e-2))
    throw Error(Errc::precondition, "tolerances must lie in (0, 1e-2)");
  if (budget < 1.0) throw Error(Errc::precondition, "budget must be positive");
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw Error(Errc::precondition, "unknown suite '" + s + "'");
}

std::vector<std::string> preset_names() { return {"n3", "n5", "n6", "n8"}; }

std::optional<RunConfig> preset(const std::string& name) {
  for (int n : {3, 5, 6, 8})
    if (name == "n" + std::to_string(n)) {
      RunConfig cfg;
      cfg.preset = name;
      cfg.n = n;
      return cfg;
    }
  return std::nullopt;
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["preset"] = cfg.preset;
  j["tau_lat"] = {cfg.tau_lat.real(), cfg.tau_lat.imag()};
  j["series_tol"] = cfg.series_tol;
  j["torsion"] = {cfg.a, cfg.b, cfg.n};
  j["dmax"] = cfg.module_dmax();
  j["algebra_dmax"] = cfg.algebra_dmax;
  j["tol_rank"] = cfg.tol_rank;
  j["tol_residual"] = cfg.tol_residual;
  j["seed"] = cfg.seed;
  j["suites"] = cfg.suites;
  j["budget"] = cfg.budget;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig cfg) {
  static const std::set<std::string> known{"preset", "tau_lat", "series_tol", "torsion", "dmax", "algebra_dmax",
                                           "tol_rank", "tol_residual", "seed", "suites", "budget"};
  if (!j.is_object()) throw Error(Errc::precondition, "config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw Error(Errc::precondition, "unknown config key '" + key + "'");
  try {
    if (j.contains("preset")) {
      const auto name = j.at("preset").get<std::string>();
      const auto p = preset(name);
      if (!p) throw Error(Errc::precondition, "unknown preset '" + name + "'");
      cfg = *p;
    }
    if (j.contains("tau_lat")) {
      const auto& t = j.at("tau_lat");
      if (t.is_string()) {
        const auto s = t.get<std::string>();
        if (s == "i")
          cfg.tau_lat = {0.0, 1.0};
        else if (s == "rho")
          cfg.tau_lat = {0.5, std::sqrt(3.0) / 2.0};
        else
          throw Error(Errc::precondition, "tau_lat must be [re, im], \"i\" or \"rho\"");
      } else {
        cfg.tau_lat = {t.at(0).get<double>(), t.at(1).get<double>()};
      }
    }
    if (j.contains("series_tol")) cfg.series_tol = j.at("series_tol").get<double>();
    if (j.contains("torsion")) {
      const auto& t = j.at("torsion");
      cfg.a = t.at(0).get<std::int64_t>();
      cfg.b = t.at(1).get<std::int64_t>();
      cfg.n = t.at(2).get<std::int64_t>();
    }
    if (j.contains("dmax")) cfg.dmax = j.at("dmax").get<int>();
    if (j.contains("algebra_dmax")) cfg.algebra_dmax = j.at("algebra_dmax").get<int>();
    if (j.contains("tol_rank")) cfg.tol_rank = j.at("tol_rank").get<double>();
    if (j.contains("tol_residual")) cfg.tol_residual = j.at("tol_residual").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::precondition, std::string("malformed config: ") + e.what());
  }
  return cfg;
}

}  // namespace skl

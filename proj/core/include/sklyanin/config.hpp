#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sklyanin/lattice.hpp"
#include "sklyanin/point.hpp"

namespace skl {

/// Everything a verification run depends on. τ = (a + b·tau_lat)/n.
struct RunConfig {
  std::string preset;  // informational only
  cplx tau_lat{0.31, 1.17};
  double series_tol = 1e-16;
  std::int64_t a = 1, b = 0, n = 3;
  int dmax = 0;           // module truncation degree; 0 means 2s+6
  int algebra_dmax = 8;   // A_0..A_algebra_dmax for the Hilbert-series check
  double tol_rank = 1e-8;
  double tol_residual = 1e-8;
  std::uint64_t seed = 20240607;
  std::vector<std::string> suites{"all"};
  double budget = 3628800.0;  // max permutations for a standard-polynomial test (10!)

  LatticeParam lattice() const { return {tau_lat, series_tol}; }
  RatPair tau() const;
  int s() const { return n % 2 == 0 ? static_cast<int>(n / 2) : static_cast<int>(n); }
  int module_dmax() const { return dmax > 0 ? dmax : 2 * s() + 6; }
  /// Throws Errc::precondition (or invalid_lattice) with a readable message.
  void validate() const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theta", "geometry", "algebra", "modules", "fatpoints", "all"};
  return names;
}

/// n3, n5, n6, n8 (τ = 1/n on the default lattice).
std::optional<RunConfig> preset(const std::string& name);
std::vector<std::string> preset_names();

nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

}  // namespace skl

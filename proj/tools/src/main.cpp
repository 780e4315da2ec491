// sklyanin-verify: run verification suites and write a JSON report.
//
// Exit codes: 0 every check passed (or was skipped), 1 some check failed or the
// golden comparison differs, 2 usage error, 3 calibration failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sklyanin/config.hpp"
#include "sklyanin/report.hpp"
#include "sklyanin/suites.hpp"
#include "sklyanin/types.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCalibration = 3;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw skl::Error(skl::Errc::precondition, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw skl::Error(skl::Errc::precondition, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Sklyanin algebra fat points"};
  std::string config_path, preset_name, report_path, golden_path;
  std::vector<std::string> suites;
  std::optional<int> dmax;
  std::optional<double> tol_rank, tol_res;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "flat JSON file mirroring RunConfig")->check(CLI::ExistingFile);
  app.add_option("--suite", suites, "theta | geometry | algebra | modules | fatpoints | all (repeatable)");
  app.add_option("--preset", preset_name, "n3 | n5 | n6 | n8");
  app.add_option("--dmax", dmax, "module truncation degree (>= 2s+4)");
  app.add_option("--tol-rank", tol_rank, "relative singular-value threshold");
  app.add_option("--tol-res", tol_res, "residual tolerance");
  app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--report", report_path, "write the report here instead of stdout");
  app.add_option("--golden", golden_path, "compare against this report, ignoring timings")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  skl::RunConfig cfg;
  try {
    if (!preset_name.empty()) {
      auto p = skl::preset(preset_name);
      if (!p) throw skl::Error(skl::Errc::precondition, "unknown preset '" + preset_name + "'");
      cfg = *p;
    }
    if (!config_path.empty()) cfg = skl::config_from_json(read_json(config_path), cfg);
    if (!suites.empty()) cfg.suites = suites;
    if (dmax) cfg.dmax = *dmax;
    if (tol_rank) cfg.tol_rank = *tol_rank;
    if (tol_res) cfg.tol_residual = *tol_res;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    for (const auto& s : cfg.suites)
      if (std::find(skl::suite_names().begin(), skl::suite_names().end(), s) == skl::suite_names().end())
        throw skl::Error(skl::Errc::precondition, "unknown suite '" + s + "'");
  } catch (const skl::Error& e) {
    std::cerr << "sklyanin-verify: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  skl::SuiteResult result;
  try {
    result = skl::run_suites(cfg);
  } catch (const skl::Error& e) {
    std::cerr << "sklyanin-verify: " << e.what() << "\n";
    return e.code() == skl::Errc::precondition ? kExitUsage : kExitFail;
  }
  const double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const auto report = skl::emit_report(result.records, skl::to_json(cfg), wall);

  if (report_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "sklyanin-verify: cannot write '" << report_path << "'\n";
      return kExitUsage;
    }
    out << report.dump(2) << "\n";
  }

  if (result.calibration_abort) return kExitCalibration;

  int rc = skl::summarize(result.records).fail > 0 ? kExitFail : 0;
  if (!golden_path.empty()) {
    try {
      const auto diffs = skl::golden_diff(nlohmann::json::parse(report.dump()), read_json(golden_path));
      for (const auto& d : diffs) std::cerr << "golden: " << d << "\n";
      if (!diffs.empty()) rc = kExitFail;
    } catch (const skl::Error& e) {
      std::cerr << "sklyanin-verify: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return rc;
}

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sklyanin/algebra.hpp"
#include "sklyanin/calibrate.hpp"
#include "sklyanin/config.hpp"
#include "sklyanin/curve.hpp"
#include "sklyanin/report.hpp"

namespace skl {

/// Shared state for one run: the calibrated curve and, built on first use,
/// the truncated algebra and its degree-2 center.
class Session {
 public:
  explicit Session(RunConfig cfg);

  const RunConfig& config() const { return cfg_; }
  const CalibrationSearch& calibration() const { return search_; }
  bool calibrated() const { return search_.best.residual <= cfg_.tol_residual; }
  const Curve& curve() const { return curve_; }
  const RelationSet& relations() const { return rels_; }
  const GradedAlgebra& algebra();
  const std::vector<CentralElement>& center();
  double algebra_ms() const { return algebra_ms_; }

 private:
  RunConfig cfg_;
  CalibrationSearch search_;
  Curve curve_;
  RelationSet rels_;
  std::optional<GradedAlgebra> algebra_;
  std::optional<std::vector<CentralElement>> center_;
  double algebra_ms_ = 0.0;
};

struct SuiteResult {
  std::vector<CheckRecord> records;
  bool calibration_abort = false;
};

/// Seed of the random stream owned by one named check.
std::uint64_t check_seed(std::uint64_t seed, std::string_view name);

/// Runs one suite ("all" expands to every suite in order). Throws Errc::precondition
/// for unknown suite names; any other failure inside a check becomes a fail record.
SuiteResult run_suite(const RunConfig& cfg, const std::string& suite);
SuiteResult run_suite(Session& session, const std::string& suite);
/// Every suite listed in cfg.suites, sharing one session.
SuiteResult run_suites(const RunConfig& cfg);

}  // namespace skl

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sklyanin/config.hpp"

namespace skl {

using ojson = nlohmann::ordered_json;

enum class Status { pass, fail, skipped_budget, exceptional };
const char* to_string(Status s) noexcept;
Status status_from_string(const std::string& s);

/// How observed is compared with expected:
///   exact     observed == expected
///   approx    |observed - expected| <= tolerance
///   at_least  observed >= expected - tolerance
///   at_most   observed <= expected + tolerance
enum class Comparison { exact, approx, at_least, at_most };
const char* to_string(Comparison c) noexcept;
Comparison comparison_from_string(const std::string& s);

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string paper_ref;
  ojson params = ojson::object();
  ojson observed;
  ojson expected;
  double tolerance = 0.0;
  Comparison comparison = Comparison::exact;
  Status status = Status::fail;
  double wall_ms = 0.0;
  std::string note;

  bool operator==(const CheckRecord&) const = default;
};

/// The status implied by observed/expected/tolerance.
Status evaluate(const ojson& observed, const ojson& expected, double tolerance, Comparison c);

CheckRecord make_check(std::string suite, std::string name, std::string paper_ref, ojson params, ojson observed,
                       ojson expected, double tolerance, Comparison c);
/// The only two statuses that are set by hand.
CheckRecord make_skipped_budget(std::string suite, std::string name, std::string paper_ref, ojson params,
                                std::string note);
CheckRecord make_exceptional(std::string suite, std::string name, std::string paper_ref, ojson params,
                             std::string note);

/// Stable order: suite, name, then the serialized params.
void sort_records(std::vector<CheckRecord>& records);

struct ReportSummary {
  int pass = 0, fail = 0, skipped_budget = 0, exceptional = 0;
  int total() const { return pass + fail + skipped_budget + exceptional; }
};
ReportSummary summarize(const std::vector<CheckRecord>& records);

ojson to_json(const CheckRecord& r);
CheckRecord record_from_json(const nlohmann::json& j);

struct Report {
  std::string schema = "1";
  std::string engine_version;
  std::string git_describe;
  ojson config = ojson::object();
  double wall_ms = 0.0;
  std::vector<CheckRecord> records;
};

std::string engine_git_describe();
std::string engine_version();

/// Versioned report with config echo and a summary block; fields in a fixed order.
ojson emit_report(const std::vector<CheckRecord>& records, const ojson& config, double wall_ms);
Report parse_report(const nlohmann::json& j);

/// Differences between two reports, ignoring wall-clock fields. Empty means equal.
std::vector<std::string> golden_diff(const nlohmann::json& actual, const nlohmann::json& golden);

}  // namespace skl

#include "sklyanin/report.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sklyanin/types.hpp"

#ifndef SKLYANIN_GIT_DESCRIBE
#define SKLYANIN_GIT_DESCRIBE "unknown"
#endif
#ifndef SKLYANIN_VERSION
#define SKLYANIN_VERSION "0.0.0"
#endif

namespace skl {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped_budget: return "skipped-budget";
    case Status::exceptional: return "exceptional";
  }
  return "fail";
}

Status status_from_string(const std::string& s) {
  for (Status st : {Status::pass, Status::fail, Status::skipped_budget, Status::exceptional})
    if (s == to_string(st)) return st;
  throw Error(Errc::precondition, "unknown status '" + s + "'");
}

const char* to_string(Comparison c) noexcept {
  switch (c) {
    case Comparison::exact: return "exact";
    case Comparison::approx: return "approx";
    case Comparison::at_least: return "at_least";
    case Comparison::at_most: return "at_most";
  }
  return "exact";
}

Comparison comparison_from_string(const std::string& s) {
  for (Comparison c : {Comparison::exact, Comparison::approx, Comparison::at_least, Comparison::at_most})
    if (s == to_string(c)) return c;
  throw Error(Errc::precondition, "unknown comparison '" + s + "'");
}

Status evaluate(const ojson& observed, const ojson& expected, double tolerance, Comparison c) {
  if (c == Comparison::exact) return observed == expected ? Status::pass : Status::fail;
  if (!observed.is_number() || !expected.is_number()) return Status::fail;
  const double o = observed.get<double>(), e = expected.get<double>();
  if (!std::isfinite(o)) return Status::fail;
  bool ok = false;
  switch (c) {
    case Comparison::approx: ok = std::abs(o - e) <= tolerance; break;
    case Comparison::at_least: ok = o >= e - tolerance; break;
    case Comparison::at_most: ok = o <= e + tolerance; break;
    case Comparison::exact: break;
  }
  return ok ? Status::pass : Status::fail;
}

CheckRecord make_check(std::string suite, std::string name, std::string paper_ref, ojson params, ojson observed,
                       ojson expected, double tolerance, Comparison c) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.paper_ref = std::move(paper_ref);
  r.params = std::move(params);
  r.observed = std::move(observed);
  r.expected = std::move(expected);
  r.tolerance = tolerance;
  r.comparison = c;
  r.status = evaluate(r.observed, r.expected, r.tolerance, r.comparison);
  return r;
}

namespace {

CheckRecord hand_set(std::string suite, std::string name, std::string paper_ref, ojson params, std::string note,
                     Status st) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.paper_ref = std::move(paper_ref);
  r.params = std::move(params);
  r.observed = nullptr;
  r.expected = nullptr;
  r.status = st;
  r.note = std::move(note);
  return r;
}

}  // namespace

CheckRecord make_skipped_budget(std::string suite, std::string name, std::string paper_ref, ojson params,
                                std::string note) {
  return hand_set(std::move(suite), std::move(name), std::move(paper_ref), std::move(params), std::move(note),
                  Status::skipped_budget);
}

CheckRecord make_exceptional(std::string suite, std::string name, std::string paper_ref, ojson params,
                             std::string note) {
  return hand_set(std::move(suite), std::move(name), std::move(paper_ref), std::move(params), std::move(note),
                  Status::exceptional);
}

void sort_records(std::vector<CheckRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const CheckRecord& x, const CheckRecord& y) {
    return std::forward_as_tuple(x.suite, x.name, x.params.dump()) <
           std::forward_as_tuple(y.suite, y.name, y.params.dump());
  });
}

ReportSummary summarize(const std::vector<CheckRecord>& records) {
  ReportSummary s;
  for (const auto& r : records) switch (r.status) {
      case Status::pass: ++s.pass; break;
      case Status::fail: ++s.fail; break;
      case Status::skipped_budget: ++s.skipped_budget; break;
      case Status::exceptional: ++s.exceptional; break;
    }
  return s;
}

ojson to_json(const CheckRecord& r) {
  ojson j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["paper_ref"] = r.paper_ref;
  j["params"] = r.params;
  j["observed"] = r.observed;
  j["expected"] = r.expected;
  j["tolerance"] = r.tolerance;
  j["comparison"] = to_string(r.comparison);
  j["status"] = to_string(r.status);
  if (!r.note.empty()) j["note"] = r.note;
  j["wall_ms"] = r.wall_ms;
  return j;
}

CheckRecord record_from_json(const nlohmann::json& j) {
  CheckRecord r;
  r.suite = j.at("suite").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.paper_ref = j.at("paper_ref").get<std::string>();
  r.params = ojson::parse(j.at("params").dump());
  r.observed = ojson::parse(j.at("observed").dump());
  r.expected = ojson::parse(j.at("expected").dump());
  r.tolerance = j.at("tolerance").get<double>();
  r.comparison = comparison_from_string(j.at("comparison").get<std::string>());
  r.status = status_from_string(j.at("status").get<std::string>());
  r.note = j.value("note", std::string());
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

std::string engine_git_describe() { return SKLYANIN_GIT_DESCRIBE; }
std::string engine_version() { return SKLYANIN_VERSION; }

ojson emit_report(const std::vector<CheckRecord>& records, const ojson& config, double wall_ms) {
  std::vector<CheckRecord> sorted = records;
  sort_records(sorted);
  const ReportSummary s = summarize(sorted);
  ojson j;
  j["schema"] = "1";
  j["engine"] = {{"name", "sklyanin-verify"}, {"version", engine_version()}, {"git_describe", engine_git_describe()}};
  j["config"] = config;
  j["summary"] = {{"checks", s.total()},
                  {"pass", s.pass},
                  {"fail", s.fail},
                  {"skipped-budget", s.skipped_budget},
                  {"exceptional", s.exceptional}};
  j["wall_ms"] = wall_ms;
  j["checks"] = ojson::array();
  for (const auto& r : sorted) j["checks"].push_back(to_json(r));
  return j;
}

Report parse_report(const nlohmann::json& j) {
  Report rep;
  rep.schema = j.at("schema").get<std::string>();
  if (rep.schema != "1") throw Error(Errc::precondition, "unsupported report schema '" + rep.schema + "'");
  rep.engine_version = j.at("engine").at("version").get<std::string>();
  rep.git_describe = j.at("engine").at("git_describe").get<std::string>();
  rep.config = ojson::parse(j.at("config").dump());
  rep.wall_ms = j.at("wall_ms").get<double>();
  for (const auto& c : j.at("checks")) rep.records.push_back(record_from_json(c));
  return rep;
}

namespace {

void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    for (auto& [_, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

}  // namespace

std::vector<std::string> golden_diff(const nlohmann::json& actual, const nlohmann::json& golden) {
  nlohmann::json a = actual, g = golden;
  strip_timing(a);
  strip_timing(g);
  std::vector<std::string> out;
  for (const auto& op : nlohmann::json::diff(g, a)) {
    const std::string path = op.at("path").get<std::string>();
    out.push_back(op.at("op").get<std::string>() + " " + path);
  }
  return out;
}

}  // namespace skl

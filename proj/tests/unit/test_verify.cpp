#include <gtest/gtest.h>

#include <random>

#include "sklyanin/config.hpp"
#include "sklyanin/report.hpp"
#include "sklyanin/suites.hpp"

using namespace skl;

TEST(Config, Presets) {
  for (const auto& name : preset_names()) {
    const auto cfg = preset(name);
    ASSERT_TRUE(cfg.has_value());
    EXPECT_NO_THROW(cfg->validate());
  }
  EXPECT_EQ(preset("n6")->s(), 3);
  EXPECT_EQ(preset("n8")->s(), 4);
  EXPECT_EQ(preset("n5")->s(), 5);
  EXPECT_EQ(preset("n3")->module_dmax(), 12);
  EXPECT_FALSE(preset("n4").has_value());
}

TEST(Config, JsonRoundTrip) {
  RunConfig cfg = *preset("n5");
  cfg.seed = 99;
  cfg.suites = {"algebra", "theta"};
  cfg.tol_rank = 1e-9;
  const RunConfig back = config_from_json(nlohmann::json::parse(to_json(cfg).dump()));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(config_from_json({{"no_such_key", 1}}), Error);
  EXPECT_THROW(config_from_json({{"seed", "abc"}}), Error);
  for (auto n : {1, 2, 4}) {
    RunConfig c;
    c.n = n;
    EXPECT_THROW(c.validate(), Error) << n;
  }
  RunConfig c = *preset("n3");
  c.dmax = 9;  // < 2s+4
  EXPECT_THROW(c.validate(), Error);
  c = *preset("n6");
  c.a = 2;  // gcd(2, 0, 6) = 2, τ would have order 3
  EXPECT_THROW(c.validate(), Error);
  c = *preset("n3");
  c.suites = {"bogus"};
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, NamedLattices) {
  const RunConfig c = config_from_json({{"tau_lat", "i"}, {"torsion", {1, 1, 5}}});
  EXPECT_EQ(c.tau_lat, cplx(0.0, 1.0));
  EXPECT_EQ(c.n, 5);
  EXPECT_NO_THROW(c.validate());
}

TEST(Report, StatusIsComputed) {
  EXPECT_EQ(evaluate(20, 20, 0, Comparison::exact), Status::pass);
  EXPECT_EQ(evaluate(21, 20, 0, Comparison::exact), Status::fail);
  EXPECT_EQ(evaluate(1e-9, 1e-8, 0, Comparison::at_most), Status::pass);
  EXPECT_EQ(evaluate(1e-7, 1e-8, 0, Comparison::at_most), Status::fail);
  EXPECT_EQ(evaluate(0.5, 1e-3, 0, Comparison::at_least), Status::pass);
  EXPECT_EQ(evaluate(1.05, 1.0, 0.1, Comparison::approx), Status::pass);
  EXPECT_EQ(evaluate(std::nan(""), 1.0, 0.1, Comparison::at_most), Status::fail);
  EXPECT_EQ(evaluate("x", 1.0, 0.1, Comparison::at_most), Status::fail);
}

TEST(Report, EmptyReportIsValid) {
  const ojson j = emit_report({}, ojson::object(), 0.0);
  EXPECT_EQ(j["schema"], "1");
  EXPECT_EQ(j["summary"]["checks"], 0);
  EXPECT_TRUE(j["checks"].empty());
  EXPECT_TRUE(parse_report(nlohmann::json::parse(j.dump())).records.empty());
}

TEST(Report, RoundTrip) {
  std::vector<CheckRecord> recs;
  recs.push_back(make_check("algebra", "dim A_3", "ref", {{"d", 3}}, 20, 20, 0.0, Comparison::exact));
  recs.push_back(make_check("modules", "residual", "ref", {{"lines", 5}}, 1.2345678901234567e-15, 1e-8, 0.0,
                            Comparison::at_most));
  recs.push_back(make_skipped_budget("fatpoints", "S_16", "ref", {{"m", 16}}, "too many permutations"));
  recs.back().wall_ms = 3.25;
  const ojson j = emit_report(recs, ojson::object(), 10.0);
  const Report r = parse_report(nlohmann::json::parse(j.dump()));
  sort_records(recs);
  ASSERT_EQ(r.records.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(r.records[i], recs[i]) << i;
  EXPECT_EQ(j["summary"]["pass"], 2);
  EXPECT_EQ(j["summary"]["skipped-budget"], 1);
}

TEST(Report, SortedIndependentlyOfInsertionOrder) {
  std::vector<CheckRecord> a, b;
  for (int i = 0; i < 6; ++i)
    a.push_back(make_check(i % 2 ? "x" : "y", "n" + std::to_string(i % 3), "", {{"i", i}}, i, i, 0, Comparison::exact));
  b.assign(a.rbegin(), a.rend());
  EXPECT_EQ(emit_report(a, {}, 0).dump(), emit_report(b, {}, 0).dump());
}

TEST(Report, GoldenIgnoresTimings) {
  std::vector<CheckRecord> recs{make_check("s", "n", "", {}, 1, 1, 0, Comparison::exact)};
  const auto j1 = nlohmann::json::parse(emit_report(recs, {}, 1.0).dump());
  recs[0].wall_ms = 123.0;
  const auto j2 = nlohmann::json::parse(emit_report(recs, {}, 2.0).dump());
  EXPECT_TRUE(golden_diff(j1, j2).empty());
  recs[0] = make_check("s", "n", "", {}, 2, 1, 0, Comparison::exact);
  EXPECT_FALSE(golden_diff(nlohmann::json::parse(emit_report(recs, {}, 1.0).dump()), j1).empty());
}

TEST(Suites, AlgebraSuiteReportsDimA3) {
  const auto res = run_suite(*preset("n3"), "algebra");
  const auto it = std::find_if(res.records.begin(), res.records.end(),
                               [](const CheckRecord& r) { return r.name == "dim A_3"; });
  ASSERT_NE(it, res.records.end());
  EXPECT_EQ(it->expected, 20);
  EXPECT_EQ(it->status, Status::pass);
}

TEST(Suites, ModulesSuiteReportsHomDim) {
  const auto res = run_suite(*preset("n3"), "modules");
  int found = 0;
  for (const auto& r : res.records)
    if (r.name == "hom dim Prop 6.2") {
      ++found;
      EXPECT_EQ(r.expected, 2);
      EXPECT_EQ(r.status, Status::pass);
    }
  EXPECT_EQ(found, 10);
}

TEST(Suites, UnknownSuiteIsRejected) {
  try {
    run_suite(*preset("n3"), "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition);
  }
}

TEST(Suites, DeterministicGivenSeed) {
  RunConfig cfg = *preset("n3");
  cfg.suites = {"all"};
  const auto a = run_suites(cfg), b = run_suites(cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].name, b.records[i].name);
    EXPECT_EQ(a.records[i].observed.dump(), b.records[i].observed.dump()) << a.records[i].name;
    EXPECT_EQ(a.records[i].status, b.records[i].status);
  }
}

TEST(Suites, CalibrationFailureAborts) {
  RunConfig cfg = *preset("n3");
  cfg.tol_residual = 1e-30;
  cfg.suites = {"modules", "fatpoints"};
  const auto res = run_suites(cfg);
  EXPECT_TRUE(res.calibration_abort);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].status, Status::fail);
}

TEST(Suites, CheckSeedsDiffer) {
  EXPECT_NE(check_seed(1, "a"), check_seed(1, "b"));
  EXPECT_NE(check_seed(1, "a"), check_seed(2, "a"));
  EXPECT_EQ(check_seed(7, "x"), check_seed(7, "x"));
}

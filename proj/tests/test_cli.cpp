#include <catch2/catch_amalgamated.hpp>

#include "pwlab/gallery.hpp"

using namespace pwlab;

namespace {

std::string scenario_e3() {
  return R"({
    "name": "E3_ricciflat",
    "n": 3,
    "connection": [{"A": 1, "C": 2, "B": 1, "value": "x3"}]
  })";
}

}  // namespace

TEST_CASE("scenario parsing") {
  // flat n=2 with no checks listed resolves to the default battery of 12
  {
    Scenario sc = parse_scenario_string(R"({"name": "flat_n2", "n": 2, "connection": []})");
    CHECK(sc.name == "flat_n2");
    CHECK(sc.checks.empty());
    CHECK(default_checks().size() == 12);
    CheckReport rep = run_checks(sc);
    CHECK(rep.entries.size() == 12);
    CHECK(rep.all_passed());
  }
  // the E3 fixture
  {
    Scenario sc = parse_scenario_string(scenario_e3());
    CHECK(sc.connection.n == 3);
    CHECK(sc.connection.G(0, 1, 0) == parse_scalar("x3", *sc.connection.chart));
  }
  // malformed polynomial: position reported
  {
    CHECK_THROWS_WITH(parse_scenario_string(
                          R"({"name": "bad", "n": 2,
                              "connection": [{"A":1,"C":2,"B":1,"value":"x1^"}]})"),
                      Catch::Matchers::ContainsSubstring("column"));
  }
  // non-symmetric gamma entries rejected
  {
    CHECK_THROWS_WITH(parse_scenario_string(
                          R"({"name": "bad", "n": 2, "connection": [
                                {"A":1,"C":2,"B":2,"value":"x1"},
                                {"A":2,"C":2,"B":1,"value":"x2"}]})"),
                      Catch::Matchers::ContainsSubstring("non-symmetric"));
  }
  // dimension mismatch in candidates
  {
    CHECK_THROWS_WITH(parse_scenario_string(
                          R"({"name": "bad", "n": 3, "connection": [],
                              "candidates": [{"kind": "euler-field", "name": "x",
                                              "components": ["1", "0"]}]})"),
                      Catch::Matchers::ContainsSubstring("expected 3 components"));
  }
  // unknown check names rejected with the list of valid names
  {
    Scenario sc = parse_scenario_string(
        R"({"name": "bad", "n": 2, "connection": [], "checks": ["no.such.check"]})");
    CHECK_THROWS_WITH(run_checks(sc), Catch::Matchers::ContainsSubstring("valid names"));
  }
}

TEST_CASE("failing checks carry their residual") {
  // E2 is not Ricci-flat: base_ricci_flat fails with residual P-ish component 1
  Scenario sc = parse_scenario_string(
      R"({"name": "E2", "n": 2,
          "connection": [{"A": 1, "C": 2, "B": 1, "value": "x2"}],
          "checks": ["base_ricci_flat"]})");
  CheckReport rep = run_checks(sc);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].name == "base.ricci_flat");
  CHECK(rep.entries[0].status == CheckStatus::Fail);
  CHECK(rep.entries[0].residual == "Ric: Ric[1,1] = 1");
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("check registry covers every sourced operation") {
  std::set<std::string> covered;
  for (const auto& def : check_registry())
    for (const auto& op : def.covers) covered.insert(op);
  for (const auto& op : required_coverage()) {
    INFO(op);
    CHECK(covered.count(op) == 1);
  }
  // names are unique
  std::set<std::string> names;
  for (const auto& def : check_registry()) {
    CHECK(names.insert(def.name).second);
  }
  // aliases resolve
  CHECK(find_check("base_ricci_flat") != nullptr);
  CHECK(find_check("pw_schouten_zero") != nullptr);
  CHECK(find_check("sym.decompose.roundtrip") != nullptr);
  CHECK(find_check("pw.curvature_dictionary") != nullptr);
  CHECK(find_check("definitely.not.a.check") == nullptr);
}

TEST_CASE("gallery passes and the structured report is byte-stable") {
  auto reports1 = run_gallery(1);
  for (const auto& rep : reports1) {
    INFO(rep.scenario);
    for (const auto& e : rep.entries) {
      INFO(e.name << ": " << e.residual);
      CHECK(e.status == CheckStatus::Pass);
    }
  }
  std::string json1 = report_json(reports1);
  // a second run, and a parallel run, produce the identical byte stream
  auto reports2 = run_gallery(1);
  CHECK(report_json(reports2) == json1);
  auto reports4 = run_gallery(4);
  CHECK(report_json(reports4) == json1);
  // the text report mentions every scenario
  std::string text = report_text(reports1);
  for (const auto& [name, _] : gallery_fixtures())
    CHECK(text.find(name) != std::string::npos);
}

TEST_CASE("empty and single-entry reports") {
  std::vector<CheckReport> none;
  CHECK(report_json(none) == "[]\n");
  CheckReport rep;
  rep.scenario = "tiny";
  rep.entries.push_back({"a.check", "x = y", CheckStatus::Fail, "r[1] = 1", 0.0});
  std::string j = report_json({rep});
  CHECK(j.find("\"residual\": \"r[1] = 1\"") != std::string::npos);
  CHECK(j.find("ms") == std::string::npos);  // no timings in the structured form
}

TEST_CASE("custom coordinate names") {
  Scenario sc = parse_scenario_string(R"({
    "name": "named", "n": 2, "coordinates": ["u", "v"],
    "connection": [{"A": 1, "C": 2, "B": 1, "value": "v"}],
    "options": {"jobs": 2}
  })");
  CHECK(sc.connection.chart->names[0] == "u");
  CHECK(sc.connection.chart->names[3] == "p2");
  CHECK(sc.connection.G(0, 1, 0) == Scalar::var(1));
  CHECK(sc.options.jobs == 2);
  CHECK(run_checks(sc).all_passed());
}

TEST_CASE("check errors are captured per entry without aborting the run") {
  Scenario sc = parse_scenario_string(R"({
    "name": "E2_error_capture", "n": 2,
    "connection": [{"A": 1, "C": 2, "B": 1, "value": "x2"}],
    "candidates": [{"kind": "einstein-scale", "name": "not_einstein", "components": ["1"]}],
    "checks": ["eins.decompose", "pw.k"]
  })");
  CheckReport rep = run_checks(sc);
  REQUIRE(rep.entries.size() == 2);
  bool saw_error = false, saw_pass = false;
  for (const auto& e : rep.entries) {
    if (e.name == "eins.decompose") {
      saw_error = e.status == CheckStatus::Broken && !e.residual.empty();
    }
    if (e.name == "pw.k") saw_pass = e.status == CheckStatus::Pass;
  }
  CHECK(saw_error);
  CHECK(saw_pass);
}

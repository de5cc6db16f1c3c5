#include "tiltlab/verify.hpp"

#include <doctest.h>

#include <set>

using namespace tiltlab;

TEST_CASE("registry names are unique and controls are marked") {
  std::set<std::string> names;
  std::size_t controls = 0;
  for (const auto& s : suite_registry()) {
    CHECK(names.insert(s.name).second);
    CHECK_FALSE(s.statement.empty());
    for (const auto& d : s.default_structures)
      CHECK(std::find(s.structures.begin(), s.structures.end(), d) != s.structures.end());
    controls += s.control ? 1 : 0;
  }
  CHECK(controls == 3);
  CHECK(find_suite("serre"));
  CHECK_FALSE(find_suite("nope"));
}

TEST_CASE("scenario parsing") {
  Scenario s = Scenario::from_json(Json::parse(R"({
    "seed": 9, "sample_budget": 12, "bounds": {"max_rank": 2},
    "suites": ["fp.universal", {"name": "serre", "carrier": "FpZ", "flavor": "Split", "budget": 3}]
  })"));
  CHECK(s.seed == 9);
  CHECK(s.bounds.max_rank == 2);
  CHECK(s.bounds.max_entry == 10);
  REQUIRE(s.suites.size() == 2);
  CHECK(s.suites[1].ex == ExactStructure{Carrier::FpZ, Flavor::Split});
  CHECK(Scenario::from_json(s.to_json()).to_json() == s.to_json());

  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"suites": ["nope"]})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"sed": 1})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"seed": "one"})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"carrier": "FpZ"})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"carrier": "FpZ", "flavor": "Inherited"})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::from_json(Json::parse(R"({"bounds": {"max_width": 0}})")), ScenarioError);
  CHECK_THROWS_AS(Scenario::load("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("planning expands defaults and rejects unsupported combinations") {
  Scenario all;
  std::size_t expected = 0;
  for (const auto& s : suite_registry())
    if (!s.control) expected += std::max<std::size_t>(1, s.default_structures.size());
  CHECK(plan(all).size() == expected);

  Scenario one;
  one.suites.push_back({"serre", std::nullopt, 5, std::nullopt});
  one.ex = ExactStructure{Carrier::TorsionClassZ, Flavor::Inherited};
  auto runs = plan(one);
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].context.budget == 5);
  CHECK(runs[0].context.ex == one.ex);

  Scenario bad;
  bad.suites.push_back({"tstructure.left", ExactStructure{Carrier::FpZ, Flavor::Maximal}, {}, {}});
  CHECK_THROWS_AS(plan(bad), UnsupportedCombination);
  bad.suites = {{"fp.universal", ExactStructure{Carrier::FreeZ, Flavor::Split}, {}, {}}};
  CHECK_THROWS_AS(plan(bad), UnsupportedCombination);
  bad.suites = {{"fp.universal", {}, {}, {}}};
  bad.ring = RingTag::RationalPolynomials;
  CHECK_THROWS_AS(plan(bad), UnsupportedCombination);
}

TEST_CASE("reports are deterministic and count failures") {
  Scenario s;
  s.seed = 3;
  s.sample_budget = 8;
  s.suites = {{"fp.universal", {}, {}, {}}, {"control.corrupted-tstructure", {}, 30, {}}};
  RunReport a = run_scenario(s, 1), b = run_scenario(s, 2);
  CHECK_FALSE(a.passed());
  CHECK(a.results[0].failures() == 0);
  CHECK(a.results[1].failures() > 0);
  Json ja = a.to_json(), jb = b.to_json();
  ja.erase("wall_time_seconds");
  jb.erase("wall_time_seconds");
  for (auto* j : {&ja, &jb})
    for (auto& suite : (*j)["suites"]) suite.erase("wall_time_seconds");
  CHECK(ja == jb);
  CHECK(ja["sampling"]["version"] == kSamplingVersion);
  CHECK(a.to_text().find("FAIL") != std::string::npos);
}

#include "tiltlab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum Exit { kPass = 0, kFailures = 1, kBadInput = 2, kUnsupported = 3 };

// "name" or "name:carrier=FpZ,flavor=Split".
tiltlab::SuiteRequest parse_suite_arg(const std::string& arg) {
  tiltlab::SuiteRequest req;
  const auto colon = arg.find(':');
  req.name = arg.substr(0, colon);
  if (!tiltlab::find_suite(req.name)) throw tiltlab::ScenarioError("unknown suite '" + req.name + "'");
  if (colon != std::string::npos) {
    try {
      req.ex = tiltlab::ExactStructure::parse(arg.substr(colon + 1));
    } catch (const std::invalid_argument& e) {
      throw tiltlab::ScenarioError(e.what());
    }
  }
  return req;
}

void list_suites() {
  for (const auto& s : tiltlab::suite_registry()) {
    std::cout << s.name << (s.control ? "  (control, expected to fail)" : "") << "\n  " << s.statement << "\n";
    if (!s.structures.empty()) {
      std::cout << "  exact structures:";
      for (const auto& ex : s.structures) {
        const bool dflt = std::find(s.default_structures.begin(), s.default_structures.end(), ex) != s.default_structures.end();
        std::cout << " " << tiltlab::to_string(ex.carrier) << "/" << tiltlab::to_string(ex.flavor) << (dflt ? "*" : "");
      }
      std::cout << "\n";
    }
  }
  std::cout << "\n* run when no exact structure is requested\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampled verification of exact structures, t-structures and effaceable functors"};
  std::string scenario_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::vector<std::string> suites;
  unsigned jobs = 0;
  bool list = false, quiet = false;
  app.add_option("--scenario", scenario_path, "Scenario JSON file (default: every non-control suite)");
  app.add_option("--out", out_path, "Write the JSON report here");
  app.add_option("--seed", seed, "Override the scenario seed");
  app.add_option("--suite", suites, "Run only this suite; repeatable; name or name:carrier=C,flavor=F");
  app.add_option("--budget", budget, "Override every sample budget");
  app.add_option("--jobs", jobs, "Worker threads (0: one per core)");
  app.add_flag("--list-suites", list, "List suites and exit");
  app.add_flag("-q,--quiet", quiet, "Print only the final summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (list) {
    list_suites();
    return kPass;
  }

  tiltlab::RunReport report;
  try {
    tiltlab::Scenario scenario = scenario_path.empty() ? tiltlab::Scenario{} : tiltlab::Scenario::load(scenario_path);
    if (seed) scenario.seed = *seed;
    if (budget) {
      scenario.sample_budget = *budget;
      for (auto& req : scenario.suites) req.budget.reset();
    }
    if (!suites.empty()) {
      scenario.suites.clear();
      for (const auto& s : suites) scenario.suites.push_back(parse_suite_arg(s));
    }
    report = tiltlab::run_scenario(scenario, jobs);
  } catch (const tiltlab::ScenarioError& e) {
    std::cerr << "tiltlab: " << e.what() << "\n";
    return kBadInput;
  } catch (const tiltlab::UnsupportedCombination& e) {
    std::cerr << "tiltlab: unsupported: " << e.what() << "\n";
    return kUnsupported;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "tiltlab: cannot write '" << out_path << "'\n";
      return kBadInput;
    }
    out << report.to_json().dump(2) << "\n";
  }
  const std::string text = report.to_text();
  if (quiet) std::cout << text.substr(text.rfind('\n', text.size() - 2) + 1);
  else std::cout << text;
  return report.passed() ? kPass : kFailures;
}

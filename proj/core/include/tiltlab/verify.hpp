#pragma once

#include "tiltlab/exact_structure.hpp"
#include "tiltlab/report.hpp"
#include "tiltlab/sampling.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

/// Malformed scenario: bad JSON, unknown keys or suite names, bad values.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request the suites cannot serve (ring or carrier).
class UnsupportedCombination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Versioned description of the sampling distributions, copied into reports.
extern const char* const kSamplingVersion;
extern const char* const kSamplingDescription;

struct SuiteContext {
  RingTag ring = RingTag::Integers;
  std::optional<ExactStructure> ex;
  std::size_t budget = 100;
  std::uint64_t seed = 1;
  SamplingBounds bounds;
};

struct SuiteInfo {
  std::string name;
  /// One-sentence statement of what the suite verifies, printed in reports.
  std::string statement;
  /// Designed to fail; excluded from the default selection.
  bool control = false;
  std::vector<RingTag> rings{RingTag::Integers};
  /// Empty for suites that do not depend on an exact structure.
  std::vector<ExactStructure> structures;
  /// Subset of `structures` run when none is requested.
  std::vector<ExactStructure> default_structures;
  std::function<CheckReport(const SuiteContext&)> run;
};

/// All suites in listing order. Names are unique.
const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& name);

struct SuiteRequest {
  std::string name;
  std::optional<ExactStructure> ex;
  std::optional<std::size_t> budget;
  std::optional<SamplingBounds> bounds;
};

/// Defaults: ring Integers, no exact structure (each suite uses its own
/// defaults), every non-control suite, budget 100, seed 1, SamplingBounds{}.
struct Scenario {
  RingTag ring = RingTag::Integers;
  std::optional<ExactStructure> ex;
  std::vector<SuiteRequest> suites;
  std::size_t sample_budget = 100;
  std::uint64_t seed = 1;
  SamplingBounds bounds;

  /// Throws ScenarioError.
  static Scenario from_json(const nlohmann::json& j);
  static Scenario load(const std::string& path);
  [[nodiscard]] nlohmann::json to_json() const;
};

/// One concrete run: a suite with its context fully resolved.
struct SuiteRun {
  const SuiteInfo* suite = nullptr;
  SuiteContext context;
};

/// Expands the scenario into runs. Throws ScenarioError for unknown names and
/// UnsupportedCombination for rings or structures a suite cannot take.
std::vector<SuiteRun> plan(const Scenario& s);

struct SuiteResult {
  SuiteRun run;
  CheckReport report;
  double wall_seconds = 0;

  [[nodiscard]] std::size_t samples() const;
  [[nodiscard]] std::size_t failures() const;
};

struct RunReport {
  Scenario scenario;
  std::vector<SuiteResult> results;
  double wall_seconds = 0;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string to_text() const;
};

SuiteResult run_suite(const SuiteRun& run);
/// Runs every planned suite on up to `jobs` threads (0: hardware
/// concurrency). Results keep plan order.
RunReport run_scenario(const Scenario& s, unsigned jobs = 0);

}  // namespace tiltlab

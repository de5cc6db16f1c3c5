#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace tiltlab {

using Json = nlohmann::json;

struct Counterexample {
  std::string property;
  std::uint64_t seed = 0;
  std::string detail;
  /// The failing sample, serialized; null when not recorded.
  nlohmann::json payload;
};

/// Outcome of one sampled property.
struct PropertyOutcome {
  std::string property;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<Counterexample> counterexamples;

  [[nodiscard]] bool passed() const { return failures == 0; }
  void record(bool ok, std::uint64_t seed, const std::string& detail, nlohmann::json payload = {}) {
    ++samples;
    if (ok) return;
    ++failures;
    counterexamples.push_back({property, seed, detail, std::move(payload)});
  }
  /// As record, but the payload is built only on failure.
  template <class MakePayload>
  void record_with(bool ok, std::uint64_t seed, const std::string& detail, MakePayload&& make) {
    if (ok) return record(true, seed, detail);
    record(false, seed, detail, make());
  }
};

struct CheckReport {
  std::string subject;
  /// A deque so references returned by property() stay valid.
  std::deque<PropertyOutcome> properties;

  [[nodiscard]] bool passed() const {
    for (const auto& p : properties)
      if (!p.passed()) return false;
    return true;
  }
  PropertyOutcome& property(const std::string& name) {
    for (auto& p : properties)
      if (p.property == name) return p;
    properties.push_back({name, 0, 0, {}});
    return properties.back();
  }
};

}  // namespace tiltlab

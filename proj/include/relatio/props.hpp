#pragma once

// Named laws about companions, checked on generated finite instances against
// the brute-force oracle tables.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace relatio {

enum class PropertyResult { Pass, Fail, Inconclusive };

std::string to_string(PropertyResult r);

struct PropertyConfig {
  std::uint64_t seed = 1;
  std::size_t universe_size = 5;
  std::size_t premise_cap = 3;
  std::size_t instances = 100;
  /// Only assert a law on instances that satisfy its hypotheses.
  bool enforce_hypotheses = true;
  /// Ask the generator for instances that break the law's hypotheses, to
  /// show they are needed. Combine with enforce_hypotheses = false.
  bool force_violation = false;
};

struct PropertyReport {
  std::string name;
  PropertyConfig config;
  std::size_t instances_run = 0;
  PropertyResult result = PropertyResult::Pass;
  /// Fail: shrunk counterexample with the instance index that produced it.
  std::string witness;
  std::string detail;
  std::vector<std::pair<std::string, std::size_t>> counters;

  std::size_t counter(const std::string& key) const;
};

struct PropertyInfo {
  std::string name;
  std::string law;
};

const std::vector<PropertyInfo>& list_properties();
bool has_property(const std::string& name);

/// Throws UnknownProperty for unregistered names. Deterministic in (name, cfg).
PropertyReport run_property(const std::string& name, const PropertyConfig& cfg);

}  // namespace relatio

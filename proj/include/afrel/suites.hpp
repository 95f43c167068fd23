#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace afrel {

// Outcome of a seeded property suite. `metrics` holds the worst observed
// deviations and counts, keyed by property.
struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // first few only
  std::map<std::string, double> metrics;

  bool ok() const noexcept { return failure_count == 0; }
  void fail(const std::string& what);
  void metric_max(const std::string& key, double value);
};

SuiteResult diagram_suite(std::uint64_t seed);
// `instances` random (labelling, compatible triple) draws over R, Z and Z^2
// and `extensions` tail-independence draws.
SuiteResult cocycle_suite(std::uint64_t seed, std::size_t instances = 10000, std::size_t extensions = 1000);
// Cylinder sums and additivity up to `max_depth` for every measure the
// library constructs from the example matrices, plus a random one.
SuiteResult markov_suite(std::uint64_t seed, int max_depth = 12);
SuiteResult harmonic_suite(std::uint64_t seed);
SuiteResult transfer_suite(std::uint64_t seed);
SuiteResult shift_suite(std::uint64_t seed);
// refine_for_cocycle then verify_normalization on random chains with
// |S_0| <= 12, N <= 4 and Z-valued data.
SuiteResult normalize_suite(std::uint64_t seed, std::size_t chains = 200);

std::vector<std::string> suite_names();
// Throws InvalidInput for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace afrel

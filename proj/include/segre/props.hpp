#pragma once

// Seeded property suites. Every trial owns a seed derived from the suite
// seed, so any failure can be replayed from its counterexample dump.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segre/io.hpp"
#include "segre/tensor_space.hpp"

namespace segre {

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  /// First failing trial: shape, trial seed, instance and the offending values.
  std::optional<io::Json> counterexample;

  bool ok() const { return passed == trials; }
};

struct SuiteOptions {
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  /// Instances are generated with a corrupted quadric.
  bool inject_fault = false;
  /// Overrides the suite's default shape list when nonempty.
  std::vector<FactorShape> shapes;
};

const std::vector<std::string>& suite_names();

/// One of lemmas, squares, bilinearity, recovery, naturality or all.
/// Throws PreconditionViolated for an unknown suite.
std::vector<PropertyResult> run_suite(const std::string& suite, const SuiteOptions& options);

std::vector<PropertyResult> lemma_properties(const SuiteOptions& options);
std::vector<PropertyResult> square_properties(const SuiteOptions& options);
std::vector<PropertyResult> bilinearity_properties(const SuiteOptions& options);
std::vector<PropertyResult> recovery_properties(const SuiteOptions& options);
std::vector<PropertyResult> naturality_properties(const SuiteOptions& options);

io::Json results_to_json(const std::vector<PropertyResult>& results);

}  // namespace segre

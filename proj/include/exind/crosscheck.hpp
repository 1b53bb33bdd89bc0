#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace exind {

/// Random-measure battery checking that the independence criteria agree
/// (conditions (i), (ii) numeric and structural, (iii), df factorization) and
/// that the conditional-law notion matches condition (i).
struct CrosscheckConfig {
  std::size_t d_min = 2;
  std::size_t d_max = 6;
  std::size_t atoms_min = 0;  // 0 means "at least d"
  std::size_t atoms_max = 8;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  /// Every bipartition is tested up to this dimension; above it a random
  /// sample of `random_bipartitions` plus the generating block, if any.
  std::size_t exhaustive_max_dim = 4;
  std::size_t random_bipartitions = 10;
};

struct CrosscheckSummary {
  std::size_t trials = 0;
  std::size_t block_structured = 0;
  std::size_t instances = 0;  // (measure, bipartition) pairs
  std::size_t independent_instances = 0;
  std::size_t lemma_disagreements = 0;
  std::size_t theorem_disagreements = 0;
  std::vector<std::string> failures;  // first few offending instances

  bool ok() const { return lemma_disagreements == 0 && theorem_disagreements == 0; }
};

/// Throws std::invalid_argument for an unsatisfiable configuration.
CrosscheckSummary run_crosscheck(const CrosscheckConfig& config);

nlohmann::json to_json(const CrosscheckSummary& summary);

}  // namespace exind

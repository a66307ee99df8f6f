#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nts/cnf.hpp"

namespace nts {

// Uniform random k-SAT: every clause draws k distinct variables uniformly
// without replacement and flips a fair coin per polarity.  Duplicate clauses
// are permitted, as in the standard uniform model.
struct GenSpec {
  uint32_t var_count = 0;
  uint32_t clause_size = 3; // k
  std::optional<double> ratio;
  std::optional<uint32_t> clause_count; // explicit m overrides ratio
  uint64_t seed = 1;

  void validate() const;
};

// m from the spec: the explicit count, or round(ratio * n) with halves
// rounded away from zero.
uint32_t clause_count_for(const GenSpec &spec);

// Pure function of the spec: the same spec always yields the same formula.
Formula gen_uniform_ksat(const GenSpec &spec);

// Header comments recording how an instance was produced.
std::vector<std::string> generator_comments(const GenSpec &spec);

enum class Certificate { satisfiable, unsatisfiable };

// Exact verdicts via complete search, for oracle-backed tests.  Exhaustive
// truth-table evaluation up to 24 variables; backtracking with unit
// propagation carries the dispatching certify_satisfiable to 60.
Certificate certify_truth_table(const Formula &f);   // n <= 24
Certificate certify_backtracking(const Formula &f);  // n <= 60
Certificate certify_satisfiable(const Formula &f);   // dispatches on n

} // namespace nts

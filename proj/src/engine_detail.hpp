#pragma once

// Shared internals of the two solve loops.

#include <chrono>
#include <vector>

#include "nts/cnf.hpp"
#include "nts/probsat.hpp"
#include "nts/search_state.hpp"

namespace nts::detail {

// Weight per break value, table[b] = prob_value(b, shape).  break_of is
// bounded by the longest occurrence list, so the table covers every
// reachable value and the hot loop reduces to one indexed load.
inline std::vector<double> build_weight_table(ProbShape shape,
                                              uint32_t max_break) {
  std::vector<double> table(max_break + 1);
  for (uint32_t b = 0; b <= max_break; ++b)
    table[b] = prob_value(b, shape);
  return table;
}

// Weighted pick over the literals of one clause.  Consumes exactly one draw,
// which both engines and the standalone sample_variable rely on to keep their
// streams aligned.
template <class WeightOfBreak>
inline uint32_t pick_clause_variable(const SearchState &state, uint32_t clause,
                                     WeightOfBreak &&weight_of_break,
                                     double *prefix, Rng &rng) {
  const auto lits = state.formula().clause(clause);
  double total = 0.0;
  for (size_t i = 0; i < lits.size(); ++i) {
    total += weight_of_break(state.break_of(lit_var(lits[i])));
    prefix[i] = total;
  }
  const double u = rng.next_double() * total;
  size_t pick = 0;
  while (pick + 1 < lits.size() && prefix[pick] <= u)
    ++pick;
  return lit_var(lits[pick]);
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Deadline poll cadence: every 4096 flips.
inline bool deadline_hit(const RunLimits &limits, uint64_t total_flips) {
  return limits.deadline && (total_flips & 4095) == 0 &&
         std::chrono::steady_clock::now() >= *limits.deadline;
}

inline RunResult
satisfied_result(const Formula &f, const SearchState &state,
                 uint64_t total_flips, uint32_t tries_used,
                 std::chrono::steady_clock::time_point start) {
  if (!check_assignment(f, state.assignment()).empty())
    throw std::logic_error("internal error: satisfying state fails "
                           "check_assignment");
  return {SolveStatus::satisfied, state.assignment(), total_flips, tries_used,
          seconds_since(start)};
}

} // namespace nts::detail

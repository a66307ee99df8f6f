#pragma once

#include <cstdint>
#include <vector>

#include "nts/index_set.hpp"
#include "nts/probsat.hpp"
#include "nts/search_state.hpp"

namespace nts {

// Selection counters driving the SelectNTS heuristics:
//   cnts[c]  number of times clause c has been selected (cNTS)
//   vnts[v]  number of times variable v has been selected for flipping (vNTS)
//   hsc      the hard satisfiable clauses, { c in unsat : cnts[c] >= beta }
//   step     steps executed so far
// Both counter families are global: by default they persist across tries and
// never decrease.  hsc is maintained incrementally; rebuild_hsc restores it
// after the unsat set changes wholesale (a fresh try's new assignment).
struct NtsCounters {
  std::vector<uint64_t> cnts;
  std::vector<uint64_t> vnts; // 1-based like variables
  IndexSet hsc;
  uint64_t step = 0;

  NtsCounters(uint32_t clause_count, uint32_t var_count)
      : cnts(clause_count, 0), vnts((size_t)var_count + 1, 0),
        hsc(clause_count) {}

  void reset() {
    std::fill(cnts.begin(), cnts.end(), 0);
    std::fill(vnts.begin(), vnts.end(), 0);
    hsc.clear();
    step = 0;
  }

  void rebuild_hsc(const IndexSet &unsat, uint64_t beta) {
    hsc.clear();
    for (uint32_t c : unsat.items())
      if (cnts[c] >= beta)
        hsc.insert(c);
  }
};

// Records the selection of (unsatisfied) clause c and promotes it to the HSC
// set once its count reaches beta.
inline void update_cnts(NtsCounters &ctr, uint32_t clause, uint64_t beta) {
  if (++ctr.cnts[clause] >= beta)
    ctr.hsc.insert(clause);
}

inline void update_vnts(NtsCounters &ctr, uint32_t var) { ++ctr.vnts[var]; }

// Biased random walk: uniform over the HSC set when nonempty, else uniform
// over all unsatisfied clauses.
inline uint32_t pick_clause(const SearchState &state, const NtsCounters &ctr,
                            Rng &rng) {
  return ctr.hsc.empty() ? state.unsat().sample(rng) : ctr.hsc.sample(rng);
}

// S_v(v) = score(v) + vNTS(v) / gamma.
inline double s_v(const SearchState &state, const NtsCounters &ctr,
                  uint32_t var, uint64_t gamma) {
  return (double)state.score_of(var) + (double)ctr.vnts[var] / (double)gamma;
}

// The no-immediate-repeat filter: if the sampled variable equals the variable
// flipped in the previous step, substitutes the clause-mate with the greatest
// S_v (ties broken uniformly at random, or by position under the
// lowest_position test mode).  A unit clause leaves no alternative and the
// sampled variable stands.  last_flipped == 0 means none (fresh try).
uint32_t cc_filter(const SearchState &state, const NtsCounters &ctr,
                   uint32_t clause, uint32_t sampled, uint32_t last_flipped,
                   uint64_t gamma, TieBreak tie_break, Rng &rng);

RunResult solve_selectnts(const Formula &f, const SolverParams &params,
                          Rng &rng, const RunLimits &limits = {},
                          StepTrace *trace = nullptr);

inline RunResult solve_selectnts(const Formula &f, const SolverParams &params) {
  Rng rng(params.seed);
  return solve_selectnts(f, params, rng);
}

// Tuned (beta, gamma) presets by instance family.  Cells outside the tables
// fall back to (700, 600) with from_table = false so callers can warn.
enum class InstanceFamily { hrs, uniform };
enum class SizeRegime { medium, huge };

struct ParamPreset {
  uint64_t beta = 700;
  uint64_t gamma = 600;
  bool from_table = false;
};

// For hrs the cell is keyed by (ratio, n); for uniform by (k, regime).
ParamPreset default_params_for(InstanceFamily family, uint32_t k, double ratio,
                               uint32_t n, SizeRegime regime);

} // namespace nts

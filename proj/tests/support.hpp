#pragma once

// Shared helpers for the test suites: small random instances, brute-force
// oracles that avoid the library's own data structures, chi-square checks,
// and a step recorder.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "nts/cnf.hpp"
#include "nts/probsat.hpp"
#include "nts/rng.hpp"
#include "nts/search_state.hpp"
#include "nts/selectnts.hpp"

namespace test {

using RawClauses = std::vector<std::vector<nts::Lit>>;

// Random clause list with sizes in [min_len, max_len]; variables are drawn
// with replacement, so duplicate literals and tautological clauses occur and
// exercise the construction-time handling.
inline RawClauses random_clauses(nts::Rng &rng, uint32_t n, uint32_t m,
                                 uint32_t min_len, uint32_t max_len) {
  RawClauses clauses(m);
  for (auto &clause : clauses) {
    const uint64_t len =
        min_len + rng.next_below(max_len - min_len + 1);
    for (uint64_t j = 0; j < len; ++j) {
      const auto var = (uint32_t)rng.next_below(n) + 1;
      clause.push_back(nts::make_lit(var, rng.next_bool()));
    }
  }
  return clauses;
}

inline nts::Formula random_formula(nts::Rng &rng, uint32_t n, uint32_t m,
                                   uint32_t min_len, uint32_t max_len) {
  return nts::Formula::from_clauses(n, random_clauses(rng, n, m, min_len,
                                                      max_len));
}

inline nts::Assignment random_assignment_raw(nts::Rng &rng, uint32_t n) {
  nts::Assignment a(n);
  for (uint32_t v = 1; v <= n; ++v)
    a.set(v, rng.next_bool());
  return a;
}

// Direct evaluation of a raw clause list, independent of Formula.
inline bool clause_satisfied(const std::vector<nts::Lit> &clause,
                             const nts::Assignment &a) {
  for (nts::Lit l : clause)
    if (a.satisfies(l))
      return true;
  return false;
}

inline std::vector<uint32_t> unsat_ids_oracle(const RawClauses &clauses,
                                              const nts::Assignment &a) {
  std::vector<uint32_t> ids;
  for (uint32_t c = 0; c < clauses.size(); ++c)
    if (!clause_satisfied(clauses[c], a))
      ids.push_back(c);
  return ids;
}

// Satisfied-clause count straight off the formula's clause views, skipping
// the incremental machinery.
inline uint32_t satisfied_count_oracle(const nts::Formula &f,
                                       const nts::Assignment &a) {
  uint32_t count = 0;
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    for (nts::Lit l : f.clause(c)) {
      if (a.satisfies(l)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

/*------------------------------------------------------------------------*/

// Chi-square statistic for observed counts against expected probabilities.
inline double chi_square(const std::vector<uint64_t> &observed,
                         const std::vector<double> &expected_prob) {
  uint64_t total = 0;
  for (uint64_t o : observed)
    total += o;
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_prob[i] * (double)total;
    const double d = (double)observed[i] - expected;
    stat += d * d / expected;
  }
  return stat;
}

// 0.99 quantiles of the chi-square distribution by degrees of freedom.
inline double chi_square_critical_99(uint32_t df) {
  static const std::map<uint32_t, double> table = {
      {1, 6.6349}, {2, 9.2103},  {3, 11.3449}, {4, 13.2767}, {5, 15.0863},
      {6, 16.8119}, {7, 18.4753}, {8, 20.0902}, {9, 21.6660}, {19, 36.1909},
  };
  const auto it = table.find(df);
  if (it == table.end())
    throw std::invalid_argument("no tabled chi-square quantile for df");
  return it->second;
}

/*------------------------------------------------------------------------*/

struct StepRecord {
  uint64_t step;
  uint32_t clause;
  uint32_t var;
};

class TraceRecorder final : public nts::StepTrace {
public:
  void on_try(uint32_t try_index) override { try_starts.push_back(steps.size()); (void)try_index; }

  void on_step(uint64_t step, uint32_t clause, uint32_t var,
               const nts::SearchState &state,
               const nts::NtsCounters *counters) override {
    steps.push_back({step, clause, var});
    if (audit)
      audit(state, counters);
  }

  std::vector<StepRecord> steps;
  std::vector<size_t> try_starts; // index into steps where each try began
  std::function<void(const nts::SearchState &, const nts::NtsCounters *)>
      audit;
};

} // namespace test

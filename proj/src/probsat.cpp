#include "nts/probsat.hpp"

#include "engine_detail.hpp"

namespace nts {

uint32_t sample_variable(const SearchState &state, uint32_t clause,
                         ProbShape shape, Rng &rng) {
  const auto lits = state.formula().clause(clause);
  assert(!lits.empty());
  std::vector<double> prefix(lits.size());
  return detail::pick_clause_variable(
      state, clause, [shape](uint32_t b) { return prob_value(b, shape); },
      prefix.data(), rng);
}

RunResult solve_probsat(const Formula &f, const SolverParams &params, Rng &rng,
                        const RunLimits &limits, StepTrace *trace) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();

  if (f.clause_count() == 0) {
    Assignment model =
        f.var_count() ? random_assignment(f.var_count(), rng) : Assignment(0);
    return {SolveStatus::satisfied, std::move(model), 0, 1,
            detail::seconds_since(start)};
  }

  const ProbShape shape =
      params.shape ? *params.shape : default_shape_for(f.max_clause_size());
  shape.validate();
  const std::vector<double> weight =
      detail::build_weight_table(shape, f.max_occurrence_count());
  std::vector<double> prefix(f.max_clause_size());
  const uint64_t flip_limit = limits.flip_limit.value_or(UINT64_MAX);

  uint64_t total_flips = 0;
  for (uint64_t t = 1; t <= params.max_tries; ++t) {
    SearchState state(f, random_assignment(f.var_count(), rng));
    if (trace)
      trace->on_try((uint32_t)t);
    for (uint64_t step = 1; step <= params.max_steps; ++step) {
      if (state.unsat().empty())
        return detail::satisfied_result(f, state, total_flips, (uint32_t)t,
                                        start);
      if (total_flips >= flip_limit || detail::deadline_hit(limits, total_flips))
        return {SolveStatus::unknown, std::nullopt, total_flips, (uint32_t)t,
                detail::seconds_since(start)};

      const uint32_t clause = state.unsat().sample(rng);
      const uint32_t var = detail::pick_clause_variable(
          state, clause, [&weight](uint32_t b) { return weight[b]; },
          prefix.data(), rng);
      state.flip(var);
      ++total_flips;
      if (trace)
        trace->on_step(total_flips, clause, var, state, nullptr);
    }
  }
  return {SolveStatus::unknown, std::nullopt, total_flips,
          (uint32_t)params.max_tries, detail::seconds_since(start)};
}

} // namespace nts

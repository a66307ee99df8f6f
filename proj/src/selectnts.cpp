#include "nts/selectnts.hpp"

#include <cmath>

#include "engine_detail.hpp"

namespace nts {

uint32_t cc_filter(const SearchState &state, const NtsCounters &ctr,
                   uint32_t clause, uint32_t sampled, uint32_t last_flipped,
                   uint64_t gamma, TieBreak tie_break, Rng &rng) {
  if (sampled != last_flipped || last_flipped == 0)
    return sampled;

  // Reservoir over the maximal-S_v clause mates: ties replace the incumbent
  // with probability 1/count, so the winner is uniform among the maxima.
  const auto lits = state.formula().clause(clause);
  uint32_t best = 0;
  uint32_t tie_count = 0;
  double best_value = 0.0;
  for (Lit l : lits) {
    const uint32_t x = lit_var(l);
    if (x == sampled)
      continue;
    const double value = s_v(state, ctr, x, gamma);
    if (tie_count == 0 || value > best_value) {
      best_value = value;
      best = x;
      tie_count = 1;
    } else if (value == best_value) {
      ++tie_count;
      if (tie_break == TieBreak::uniform_random &&
          rng.next_below(tie_count) == 0)
        best = x;
    }
  }
  return tie_count == 0 ? sampled /* unit clause, no alternative */ : best;
}

RunResult solve_selectnts(const Formula &f, const SolverParams &params,
                          Rng &rng, const RunLimits &limits, StepTrace *trace) {
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
  const uint64_t beta = params.beta;

  NtsCounters ctr(f.clause_count(), f.var_count());
  uint64_t total_flips = 0;
  for (uint64_t t = 1; t <= params.max_tries; ++t) {
    SearchState state(f, random_assignment(f.var_count(), rng));
    uint32_t last_flipped = 0; // bestVar := null
    if (params.reset_counters_each_try)
      ctr.reset();
    ctr.rebuild_hsc(state.unsat(), beta);
    if (trace)
      trace->on_try((uint32_t)t);

    for (uint64_t step = 1; step <= params.max_steps; ++step) {
      if (state.unsat().empty())
        return detail::satisfied_result(f, state, total_flips, (uint32_t)t,
                                        start);
      if (total_flips >= flip_limit || detail::deadline_hit(limits, total_flips))
        return {SolveStatus::unknown, std::nullopt, total_flips, (uint32_t)t,
                detail::seconds_since(start)};

      const uint32_t clause = pick_clause(state, ctr, rng);
      update_cnts(ctr, clause, beta);
      uint32_t var = detail::pick_clause_variable(
          state, clause, [&weight](uint32_t b) { return weight[b]; },
          prefix.data(), rng);
      if (params.cc_enabled)
        var = cc_filter(state, ctr, clause, var, last_flipped, params.gamma,
                        params.tie_break, rng);
      last_flipped = var;
      update_vnts(ctr, var);
      state.flip(
          var, [&ctr](uint32_t c) { ctr.hsc.erase(c); },
          [&ctr, beta](uint32_t c) {
            if (ctr.cnts[c] >= beta)
              ctr.hsc.insert(c);
          });
      ++ctr.step;
      ++total_flips;
      if (trace)
        trace->on_step(total_flips, clause, var, state, &ctr);
    }
  }
  return {SolveStatus::unknown, std::nullopt, total_flips,
          (uint32_t)params.max_tries, detail::seconds_since(start)};
}

ParamPreset default_params_for(InstanceFamily family, uint32_t k, double ratio,
                               uint32_t n, SizeRegime regime) {
  if (family == InstanceFamily::uniform) {
    if (k == 5)
      return regime == SizeRegime::medium ? ParamPreset{5'000'000, 500'000, true}
                                          : ParamPreset{700, 600, true};
    if (k == 7)
      return regime == SizeRegime::medium ? ParamPreset{700'000, 500'000, true}
                                          : ParamPreset{2000, 4000, true};
    return {};
  }

  // hrs cells, keyed by ratio (matched within 0.05) and n.
  struct HrsCell {
    double ratio;
    uint64_t beta_small, gamma_small; // n <= 600
    uint64_t beta_large, gamma_large; // n >  600
  };
  static constexpr HrsCell cells[] = {
      {4.300, 10, 1200, 10, 1200},
      {5.206, 80, 300, 60, 800},
      {5.500, 110, 1200, 110, 900},
      {5.699, 110, 1200, 110, 900},
      {7.821, 400, 300, 400, 300},
  };
  for (const auto &cell : cells) {
    if (std::abs(ratio - cell.ratio) < 0.05) {
      if (n <= 600)
        return {cell.beta_small, cell.gamma_small, true};
      return {cell.beta_large, cell.gamma_large, true};
    }
  }
  return {};
}

} // namespace nts

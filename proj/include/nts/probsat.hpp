#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "nts/cnf.hpp"
#include "nts/rng.hpp"
#include "nts/search_state.hpp"

namespace nts {

// Probability shape for break-based variable selection:
//   polynomial    f(v) = (0.9 + break(v))^-cb
//   exponential   f(v) = cb^-break(v)
enum class ProbShapeKind { polynomial, exponential };

struct ProbShape {
  ProbShapeKind kind = ProbShapeKind::exponential;
  double cb = 3.7;

  void validate() const {
    if (kind == ProbShapeKind::exponential && !(cb > 0.0))
      throw std::invalid_argument("exponential shape requires cb > 0");
    if (kind == ProbShapeKind::polynomial && !(cb >= 0.0))
      throw std::invalid_argument("polynomial shape requires cb >= 0");
  }
};

inline double prob_value(uint32_t break_count, ProbShape shape) {
  if (shape.kind == ProbShapeKind::polynomial)
    return std::pow(0.9 + (double)break_count, -shape.cb);
  return std::pow(shape.cb, -(double)break_count);
}

// Default shape by maximum clause size: polynomial with cb1 = 2.06 for k <= 3,
// exponential otherwise with cb2 stepped by k.  The cb constants are the
// defaults tuned for ProbSAT in Balint and Schoening's work; they are
// configuration, not derived values.
inline ProbShape default_shape_for(uint32_t max_clause_size) {
  if (max_clause_size <= 3)
    return {ProbShapeKind::polynomial, 2.06};
  double cb = 5.4; // k >= 7
  if (max_clause_size == 4)
    cb = 3.0;
  else if (max_clause_size == 5)
    cb = 3.7;
  else if (max_clause_size == 6)
    cb = 5.0;
  return {ProbShapeKind::exponential, cb};
}

enum class TieBreak { uniform_random, lowest_position };

struct SolverParams {
  uint64_t max_tries = 10;
  uint64_t max_steps = 1'000'000;
  std::optional<ProbShape> shape; // unset: dispatch on max clause size
  uint64_t seed = 1;

  // SelectNTS only.
  uint64_t beta = 700;  // cNTS threshold promoting a clause to the HSC set
  uint64_t gamma = 600; // divisor damping vNTS inside S_v
  bool cc_enabled = true;
  bool reset_counters_each_try = false; // default: counters are global
  TieBreak tie_break = TieBreak::uniform_random;

  void validate() const {
    if (max_tries < 1 || max_steps < 1)
      throw std::invalid_argument("max_tries and max_steps must be >= 1");
    if (beta < 1 || gamma < 1)
      throw std::invalid_argument("beta and gamma must be >= 1");
    if (shape)
      shape->validate();
  }
};

enum class SolveStatus { satisfied, unknown };

struct RunResult {
  SolveStatus status = SolveStatus::unknown;
  std::optional<Assignment> model; // present iff satisfied, always verified
  uint64_t total_flips = 0;
  uint32_t tries_used = 0;
  double wall_seconds = 0.0;
};

// External limits; a hit limit yields status unknown, never a fault.  The
// deadline is polled every 4096 flips to keep the inner loop branch-light.
struct RunLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<uint64_t> flip_limit; // total flips across tries
};

struct NtsCounters;

// Diagnostic hook, one call per executed step.  counters is null for engines
// that keep none (ProbSAT).
class StepTrace {
public:
  virtual ~StepTrace() = default;
  virtual void on_try(uint32_t /*try_index*/) {}
  virtual void on_step(uint64_t /*step*/, uint32_t /*clause*/,
                       uint32_t /*flipped_var*/, const SearchState & /*state*/,
                       const NtsCounters * /*counters*/) {}
};

// One variable of the clause, drawn with probability proportional to
// prob_value(break_of(x), shape).
uint32_t sample_variable(const SearchState &state, uint32_t clause,
                         ProbShape shape, Rng &rng);

RunResult solve_probsat(const Formula &f, const SolverParams &params, Rng &rng,
                        const RunLimits &limits = {},
                        StepTrace *trace = nullptr);

inline RunResult solve_probsat(const Formula &f, const SolverParams &params) {
  Rng rng(params.seed);
  return solve_probsat(f, params, rng);
}

} // namespace nts

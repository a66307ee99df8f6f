#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nts/cnf.hpp"
#include "nts/index_set.hpp"
#include "nts/rng.hpp"

namespace nts {

// Each variable independently true with probability 1/2, one draw per
// variable so distinct engines consuming the same stream stay aligned.
inline Assignment random_assignment(uint32_t var_count, Rng &rng) {
  if (var_count == 0)
    throw std::invalid_argument("random_assignment: var_count must be >= 1");
  Assignment a(var_count);
  for (uint32_t v = 1; v <= var_count; ++v)
    a.set(v, rng.next_bool());
  return a;
}

// Incremental search state over one formula: the current assignment, the
// number of true literals per clause, and the set of unsatisfied clauses.
//
// Maintained invariants:
//   true_count(c) == number of literals of c true under assignment()
//   unsat()       == { c : true_count(c) == 0 }
// Tautological clauses always have at least one true literal, so they never
// enter unsat(); break_of skips them since flipping cannot falsify them.
//
// A state belongs to exactly one solver run.  Several states over one shared
// formula may run in parallel.
class SearchState {
public:
  SearchState(const Formula &f, Assignment a)
      : formula_(&f), assignment_(std::move(a)),
        true_count_(f.clause_count(), 0), unsat_(f.clause_count()) {
    assert(assignment_.var_count() == f.var_count());
    for (uint32_t c = 0; c < f.clause_count(); ++c) {
      for (Lit l : f.clause(c))
        if (assignment_.satisfies(l))
          ++true_count_[c];
      if (true_count_[c] == 0)
        unsat_.insert(c);
    }
  }

  const Formula &formula() const { return *formula_; }
  const Assignment &assignment() const { return assignment_; }
  uint32_t true_count(uint32_t clause) const { return true_count_[clause]; }
  std::span<const uint32_t> true_counts() const { return true_count_; }
  const IndexSet &unsat() const { return unsat_; }
  uint64_t flips_done() const { return flips_; }

  void flip(uint32_t var) {
    flip(var, [](uint32_t) {}, [](uint32_t) {});
  }

  // The hooks fire for exactly the clauses whose satisfaction changed.
  // Gains are applied before losses so a tautological clause (which sits in
  // both occurrence lists of var) never transits through zero.
  template <class BecameSat, class BecameUnsat>
  void flip(uint32_t var, BecameSat &&became_sat, BecameUnsat &&became_unsat) {
    const Lit was_true = make_lit(var, assignment_.value(var));
    for (uint32_t c : formula_->occurrences(-was_true)) {
      if (true_count_[c]++ == 0) {
        unsat_.erase(c);
        became_sat(c);
      }
    }
    for (uint32_t c : formula_->occurrences(was_true)) {
      if (--true_count_[c] == 0) {
        unsat_.insert(c);
        became_unsat(c);
      }
    }
    assignment_.flip(var);
    ++flips_;
  }

  // Satisfied clauses that flipping var would falsify: clauses where var's
  // currently true literal is the sole support.
  uint32_t break_of(uint32_t var) const {
    const Lit was_true = make_lit(var, assignment_.value(var));
    uint32_t count = 0;
    for (uint32_t c : formula_->occurrences(was_true))
      if (true_count_[c] == 1 && !formula_->tautological(c))
        ++count;
    return count;
  }

  // Unsatisfied clauses that flipping var would satisfy.
  uint32_t make_of(uint32_t var) const {
    const Lit was_false = make_lit(var, !assignment_.value(var));
    uint32_t count = 0;
    for (uint32_t c : formula_->occurrences(was_false))
      if (true_count_[c] == 0)
        ++count;
    return count;
  }

  // Net change in satisfied clauses from flipping var.
  int64_t score_of(uint32_t var) const {
    return (int64_t)make_of(var) - (int64_t)break_of(var);
  }

private:
  const Formula *formula_;
  Assignment assignment_;
  std::vector<uint32_t> true_count_;
  IndexSet unsat_;
  uint64_t flips_ = 0;
};

} // namespace nts

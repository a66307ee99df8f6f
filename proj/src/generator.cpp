#include "nts/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nts/rng.hpp"

namespace nts {

void GenSpec::validate() const {
  if (var_count < 1)
    throw std::invalid_argument("generator: var_count must be >= 1");
  if (clause_size < 2)
    throw std::invalid_argument("generator: clause size must be >= 2");
  if (clause_size > var_count)
    throw std::invalid_argument("generator: clause size exceeds var_count");
  if (!ratio && !clause_count)
    throw std::invalid_argument("generator: need a ratio or a clause count");
  if (ratio && !(*ratio > 0.0))
    throw std::invalid_argument("generator: ratio must be > 0");
}

uint32_t clause_count_for(const GenSpec &spec) {
  spec.validate();
  if (spec.clause_count)
    return *spec.clause_count;
  return (uint32_t)std::llround(*spec.ratio * (double)spec.var_count);
}

Formula gen_uniform_ksat(const GenSpec &spec) {
  const uint32_t m = clause_count_for(spec);
  const uint32_t n = spec.var_count;
  const uint32_t k = spec.clause_size;
  Rng rng(spec.seed);

  std::vector<std::vector<Lit>> clauses(m);
  std::vector<uint8_t> picked(n + 1, 0);
  for (auto &clause : clauses) {
    clause.reserve(k);
    for (uint32_t j = 0; j < k; ++j) {
      uint32_t var;
      do
        var = (uint32_t)rng.next_below(n) + 1;
      while (picked[var]);
      picked[var] = 1;
      clause.push_back(make_lit(var, rng.next_bool()));
    }
    for (Lit l : clause)
      picked[lit_var(l)] = 0;
  }
  return Formula::from_clauses(n, clauses);
}

std::vector<std::string> generator_comments(const GenSpec &spec) {
  const uint32_t m = clause_count_for(spec);
  std::ostringstream head;
  head << "generator: uniform-ksat n=" << spec.var_count
       << " k=" << spec.clause_size << " m=" << m << " seed=" << spec.seed;
  std::vector<std::string> comments{head.str()};
  if (spec.ratio && !spec.clause_count) {
    std::ostringstream rule;
    rule << "m = round-half-away-from-zero(ratio " << *spec.ratio << " * n)";
    comments.push_back(rule.str());
  }
  return comments;
}

/*------------------------------------------------------------------------*/

Certificate certify_truth_table(const Formula &f) {
  const uint32_t n = f.var_count();
  if (n > 24)
    throw std::invalid_argument("certify_truth_table: n exceeds 24");
  // Bit v-1 of the word is variable v.
  std::vector<uint32_t> pos(f.clause_count(), 0), neg(f.clause_count(), 0);
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    for (Lit l : f.clause(c)) {
      const uint32_t bit = 1u << (lit_var(l) - 1);
      (lit_positive(l) ? pos[c] : neg[c]) |= bit;
    }
  }
  const uint64_t count = 1ull << n;
  for (uint64_t x = 0; x < count; ++x) {
    bool sat = true;
    for (uint32_t c = 0; c < f.clause_count(); ++c) {
      if (((uint32_t)x & pos[c]) == 0 && (~(uint32_t)x & neg[c]) == 0) {
        sat = false;
        break;
      }
    }
    if (sat)
      return Certificate::satisfiable;
  }
  return Certificate::unsatisfiable;
}

namespace {

// Chronological DPLL with unit propagation and a Jeroslow-Wang branching
// heuristic; counter-based propagation is plenty at certification sizes.
class Backtracker {
public:
  explicit Backtracker(const Formula &f)
      : f_(f), value_(f.var_count() + 1, 0), sat_count_(f.clause_count(), 0),
        free_count_(f.clause_count(), 0),
        score_(2 * (size_t)f.var_count() + 2, 0.0) {
    for (uint32_t c = 0; c < f.clause_count(); ++c) {
      free_count_[c] = (uint32_t)f.clause(c).size();
      if (free_count_[c] == 1)
        pending_.push_back(c);
    }
  }

  bool solve() {
    if (!propagate())
      return false;
    for (;;) {
      const Lit decision = choose();
      if (decision == 0)
        return true;
      decisions_.push_back({(uint32_t)trail_.size(), decision, false});
      if (apply(decision) && propagate())
        continue;
      if (!backtrack())
        return false;
    }
  }

private:
  struct Decision {
    uint32_t trail_size;
    Lit lit;
    bool flipped;
  };

  bool apply(Lit l) {
    value_[lit_var(l)] = lit_positive(l) ? 1 : -1;
    trail_.push_back(l);
    for (uint32_t c : f_.occurrences(l)) {
      ++sat_count_[c];
      --free_count_[c];
    }
    bool ok = true;
    for (uint32_t c : f_.occurrences(-l)) {
      --free_count_[c];
      if (sat_count_[c] == 0) {
        if (free_count_[c] == 0)
          ok = false;
        else if (free_count_[c] == 1)
          pending_.push_back(c);
      }
    }
    return ok;
  }

  bool propagate() {
    while (!pending_.empty()) {
      const uint32_t c = pending_.back();
      pending_.pop_back();
      if (sat_count_[c] > 0)
        continue;
      Lit unit = 0;
      for (Lit l : f_.clause(c)) {
        if (value_[lit_var(l)] == 0) {
          unit = l;
          break;
        }
      }
      if (unit == 0) // all assigned and unsatisfied
        return fail();
      if (!apply(unit))
        return fail();
    }
    return true;
  }

  bool fail() {
    pending_.clear();
    return false;
  }

  void undo_to(uint32_t trail_size) {
    while (trail_.size() > trail_size) {
      const Lit l = trail_.back();
      trail_.pop_back();
      value_[lit_var(l)] = 0;
      for (uint32_t c : f_.occurrences(l)) {
        --sat_count_[c];
        ++free_count_[c];
      }
      for (uint32_t c : f_.occurrences(-l))
        ++free_count_[c];
    }
  }

  bool backtrack() {
    for (;;) {
      while (!decisions_.empty() && decisions_.back().flipped) {
        undo_to(decisions_.back().trail_size);
        decisions_.pop_back();
      }
      if (decisions_.empty())
        return false;
      Decision &d = decisions_.back();
      undo_to(d.trail_size);
      d.flipped = true;
      d.lit = -d.lit;
      if (apply(d.lit) && propagate())
        return true;
    }
  }

  // Jeroslow-Wang: literal scores sum 2^-len over unresolved clauses.
  Lit choose() {
    std::fill(score_.begin(), score_.end(), 0.0);
    bool any_unsat = false;
    for (uint32_t c = 0; c < f_.clause_count(); ++c) {
      if (sat_count_[c] > 0)
        continue;
      any_unsat = true;
      const double w = std::ldexp(1.0, -(int)std::min(free_count_[c], 50u));
      for (Lit l : f_.clause(c))
        if (value_[lit_var(l)] == 0)
          score_[lit_index(l)] += w;
    }
    if (!any_unsat)
      return 0;
    uint32_t best = 0;
    for (uint32_t i = 2; i < score_.size(); ++i)
      if (score_[i] > score_[best])
        best = i;
    return best == 0 ? 0 : lit_from_index(best);
  }

  const Formula &f_;
  std::vector<int8_t> value_;
  std::vector<uint32_t> sat_count_;
  std::vector<uint32_t> free_count_;
  std::vector<double> score_;
  std::vector<Lit> trail_;
  std::vector<uint32_t> pending_; // clause ids that may have become unit
  std::vector<Decision> decisions_;
};

} // namespace

Certificate certify_backtracking(const Formula &f) {
  if (f.var_count() > 60)
    throw std::invalid_argument("certify_backtracking: n exceeds 60");
  if (f.clause_count() == 0)
    return Certificate::satisfiable;
  return Backtracker(f).solve() ? Certificate::satisfiable
                                : Certificate::unsatisfiable;
}

Certificate certify_satisfiable(const Formula &f) {
  if (f.clause_count() == 0)
    return Certificate::satisfiable;
  if (f.var_count() <= 20)
    return certify_truth_table(f);
  return certify_backtracking(f);
}

} // namespace nts

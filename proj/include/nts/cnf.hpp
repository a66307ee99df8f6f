#pragma once

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nts {

// Literals use the DIMACS convention throughout: a nonzero int whose absolute
// value is the 1-based variable index and whose sign is the polarity.
using Lit = int32_t;

inline uint32_t lit_var(Lit l) { return (uint32_t)std::abs(l); }
inline bool lit_positive(Lit l) { return l > 0; }
inline Lit make_lit(uint32_t var, bool positive) {
  return positive ? (Lit)var : -(Lit)var;
}
// Slot of a literal in the occurrence tables: 2*var for positive, 2*var+1
// for negative.
inline uint32_t lit_index(Lit l) {
  return 2 * lit_var(l) + (l < 0 ? 1u : 0u);
}
inline Lit lit_from_index(uint32_t index) {
  return make_lit(index / 2, (index & 1) == 0);
}

// Truth value per variable, indexed 1..n.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(uint32_t var_count, bool init = false)
      : values_(var_count + 1, init ? 1 : 0) {}

  uint32_t var_count() const {
    return values_.empty() ? 0 : (uint32_t)values_.size() - 1;
  }
  bool value(uint32_t var) const { return values_[var] != 0; }
  void set(uint32_t var, bool value) { values_[var] = value ? 1 : 0; }
  void flip(uint32_t var) { values_[var] ^= 1; }
  bool satisfies(Lit l) const { return lit_positive(l) == value(lit_var(l)); }

  bool operator==(const Assignment &) const = default;

private:
  std::vector<uint8_t> values_; // slot 0 unused
};

class ParseError : public std::runtime_error {
public:
  enum class Kind {
    missing_header,
    header_clause_count_mismatch,
    variable_out_of_range,
    empty_clause,
    malformed_token,
  };

  ParseError(Kind kind, size_t line, const std::string &message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  size_t line() const { return line_; }

private:
  Kind kind_;
  size_t line_;
};

// Immutable CNF instance.  Clause ids are assigned by input order, 0-based;
// they stay stable for the lifetime of the formula (the counter schemes key
// on them).  Duplicate literals inside a clause are dropped at construction;
// a clause containing both polarities of a variable is kept, so the declared
// clause count is preserved, but flagged as tautological and treated as
// permanently satisfied by the search code.
//
// Safe to share across concurrently running solver instances once built.
class Formula {
public:
  Formula() = default;

  static Formula from_clauses(uint32_t var_count,
                              const std::vector<std::vector<Lit>> &clauses);

  uint32_t var_count() const { return var_count_; }
  uint32_t clause_count() const {
    return clause_off_.empty() ? 0 : (uint32_t)clause_off_.size() - 1;
  }
  double ratio() const {
    return var_count_ ? (double)clause_count() / (double)var_count_ : 0.0;
  }

  std::span<const Lit> clause(uint32_t id) const {
    return {lits_.data() + clause_off_[id],
            lits_.data() + clause_off_[id + 1]};
  }
  // Ids of clauses containing this literal.
  std::span<const uint32_t> occurrences(Lit l) const {
    const uint32_t i = lit_index(l);
    return {occ_.data() + occ_off_[i], occ_.data() + occ_off_[i + 1]};
  }

  bool tautological(uint32_t id) const { return tautological_[id] != 0; }
  bool has_tautology() const { return has_tautology_; }

  uint32_t max_clause_size() const { return max_clause_size_; }
  // Upper bound on any break/make value: the longest occurrence list.
  uint32_t max_occurrence_count() const { return max_occurrence_count_; }
  size_t literal_count() const { return lits_.size(); }

  bool operator==(const Formula &other) const {
    return var_count_ == other.var_count_ && lits_ == other.lits_ &&
           clause_off_ == other.clause_off_;
  }

private:
  void build_occurrence_lists();

  uint32_t var_count_ = 0;
  std::vector<Lit> lits_;            // all clauses, flattened
  std::vector<uint32_t> clause_off_; // clause id -> range in lits_, size m+1
  std::vector<uint32_t> occ_;        // occurrence lists, flattened
  std::vector<uint32_t> occ_off_;    // lit_index -> range in occ_
  std::vector<uint8_t> tautological_;
  bool has_tautology_ = false;
  uint32_t max_clause_size_ = 0;
  uint32_t max_occurrence_count_ = 0;
};

Formula parse_dimacs(std::istream &in);
Formula parse_dimacs(const std::string &text);
Formula parse_dimacs_file(const std::string &path);

// Comments are emitted first, one "c " line each.  parse_dimacs(write_dimacs(f))
// reproduces f exactly.
void write_dimacs(const Formula &f, std::ostream &out,
                  std::span<const std::string> comments = {});
std::string write_dimacs(const Formula &f,
                         std::span<const std::string> comments = {});

// Ids of clauses with no true literal under a; empty iff a satisfies f.
std::vector<uint32_t> check_assignment(const Formula &f, const Assignment &a);

} // namespace nts

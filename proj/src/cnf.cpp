#include "nts/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nts {

Formula Formula::from_clauses(uint32_t var_count,
                              const std::vector<std::vector<Lit>> &clauses) {
  Formula f;
  f.var_count_ = var_count;
  f.clause_off_.reserve(clauses.size() + 1);
  f.clause_off_.push_back(0);
  f.tautological_.reserve(clauses.size());

  // seen_[lit_index] tracks literals of the clause under construction.
  std::vector<uint8_t> seen(2 * (size_t)var_count + 2, 0);

  for (size_t id = 0; id < clauses.size(); ++id) {
    const auto &in = clauses[id];
    if (in.empty())
      throw ParseError(ParseError::Kind::empty_clause, 0,
                       "clause " + std::to_string(id) + " is empty");
    bool taut = false;
    const size_t begin = f.lits_.size();
    for (Lit l : in) {
      const uint32_t v = lit_var(l);
      if (l == 0 || v > var_count)
        throw ParseError(ParseError::Kind::variable_out_of_range, 0,
                         "literal " + std::to_string(l) + " out of range 1.." +
                             std::to_string(var_count));
      if (seen[lit_index(l)])
        continue; // duplicate literal, semantically void
      if (seen[lit_index(-l)])
        taut = true;
      seen[lit_index(l)] = 1;
      f.lits_.push_back(l);
    }
    for (size_t i = begin; i < f.lits_.size(); ++i)
      seen[lit_index(f.lits_[i])] = 0;
    f.clause_off_.push_back((uint32_t)f.lits_.size());
    f.tautological_.push_back(taut ? 1 : 0);
    f.has_tautology_ |= taut;
    f.max_clause_size_ =
        std::max(f.max_clause_size_, (uint32_t)(f.lits_.size() - begin));
  }

  f.build_occurrence_lists();
  return f;
}

void Formula::build_occurrence_lists() {
  occ_off_.assign(2 * (size_t)var_count_ + 3, 0);
  for (Lit l : lits_)
    ++occ_off_[lit_index(l) + 1];
  for (size_t i = 1; i < occ_off_.size(); ++i) {
    max_occurrence_count_ =
        std::max(max_occurrence_count_, occ_off_[i]);
    occ_off_[i] += occ_off_[i - 1];
  }
  occ_.resize(lits_.size());
  std::vector<uint32_t> cursor(occ_off_.begin(), occ_off_.end() - 1);
  for (uint32_t c = 0; c < clause_count(); ++c)
    for (Lit l : clause(c))
      occ_[cursor[lit_index(l)]++] = c;
}

namespace {

struct Tokenizer {
  explicit Tokenizer(std::istream &s) : in(s) {}

  std::istream &in;
  std::string line;
  size_t line_no = 0;
  size_t pos = 0;

  // Advances to the next token, skipping whitespace and comment lines.
  // Returns false at end of input.
  bool next(std::string_view &tok) {
    for (;;) {
      while (pos < line.size() &&
             (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
        ++pos;
      if (pos >= line.size()) {
        do {
          if (!std::getline(in, line))
            return false;
          ++line_no;
        } while (!line.empty() && line[0] == 'c');
        pos = 0;
        continue;
      }
      size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
             line[end] != '\r')
        ++end;
      tok = std::string_view(line).substr(pos, end - pos);
      pos = end;
      return true;
    }
  }
};

int64_t parse_int(std::string_view tok, size_t line_no) {
  int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(ParseError::Kind::malformed_token, line_no,
                     "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

} // namespace

Formula parse_dimacs(std::istream &in) {
  Tokenizer tz(in);
  std::string_view tok;

  // Header: the first non-comment token must start "p cnf <n> <m>".
  if (!tz.next(tok))
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "no 'p cnf' header before end of input");
  if (tok != "p")
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "expected 'p cnf' header, got '" + std::string(tok) + "'");
  if (!tz.next(tok) || tok != "cnf")
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "expected 'cnf' after 'p'");
  if (!tz.next(tok))
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "header is missing the variable count");
  const int64_t n = parse_int(tok, tz.line_no);
  if (!tz.next(tok))
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "header is missing the clause count");
  const int64_t m = parse_int(tok, tz.line_no);
  if (n < 0 || m < 0 || n > INT32_MAX)
    throw ParseError(ParseError::Kind::missing_header, tz.line_no,
                     "invalid 'p cnf' header counts");

  std::vector<std::vector<Lit>> clauses;
  clauses.reserve(std::min((size_t)m, (size_t)1 << 20));
  std::vector<Lit> clause;
  while (tz.next(tok)) {
    const int64_t lit = parse_int(tok, tz.line_no);
    if (clause.empty() && (int64_t)clauses.size() == m)
      throw ParseError(ParseError::Kind::header_clause_count_mismatch,
                       tz.line_no,
                       "more clauses than the header's " + std::to_string(m));
    if (lit == 0) {
      if (clause.empty())
        throw ParseError(ParseError::Kind::empty_clause, tz.line_no,
                         "empty clause (bare '0'): formula is trivially "
                         "unsatisfiable");
      clauses.push_back(std::move(clause));
      clause.clear();
      continue;
    }
    if (std::abs(lit) > n)
      throw ParseError(ParseError::Kind::variable_out_of_range, tz.line_no,
                       "literal " + std::to_string(lit) +
                           " out of range for " + std::to_string(n) +
                           " variables");
    clause.push_back((Lit)lit);
  }
  if (!clause.empty())
    throw ParseError(ParseError::Kind::malformed_token, tz.line_no,
                     "end of input inside a clause (missing '0')");
  if ((int64_t)clauses.size() != m)
    throw ParseError(ParseError::Kind::header_clause_count_mismatch,
                     tz.line_no,
                     "header declares " + std::to_string(m) + " clauses, " +
                         std::to_string(clauses.size()) + " present");

  return Formula::from_clauses((uint32_t)n, clauses);
}

Formula parse_dimacs(const std::string &text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Formula parse_dimacs_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  return parse_dimacs(in);
}

void write_dimacs(const Formula &f, std::ostream &out,
                  std::span<const std::string> comments) {
  for (const auto &comment : comments)
    out << "c " << comment << '\n';
  out << "p cnf " << f.var_count() << ' ' << f.clause_count() << '\n';
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    for (Lit l : f.clause(c))
      out << l << ' ';
    out << "0\n";
  }
}

std::string write_dimacs(const Formula &f,
                         std::span<const std::string> comments) {
  std::ostringstream out;
  write_dimacs(f, out, comments);
  return out.str();
}

std::vector<uint32_t> check_assignment(const Formula &f, const Assignment &a) {
  std::vector<uint32_t> unsatisfied;
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    bool sat = false;
    for (Lit l : f.clause(c)) {
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
    }
    if (!sat)
      unsatisfied.push_back(c);
  }
  return unsatisfied;
}

} // namespace nts

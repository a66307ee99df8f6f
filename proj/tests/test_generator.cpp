#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "nts/generator.hpp"
#include "support.hpp"

using namespace nts;

TEST_CASE("clause count from ratio rounds half away from zero", "[generator]") {
  GenSpec spec;
  spec.var_count = 100;
  spec.clause_size = 5;
  spec.ratio = 21.117;
  CHECK(clause_count_for(spec) == 2112); // 2111.7 rounds up

  spec.var_count = 2;
  spec.clause_size = 2;
  spec.ratio = 4.25; // 8.5 -> 9
  CHECK(clause_count_for(spec) == 9);

  spec.clause_count = 7;
  CHECK(clause_count_for(spec) == 7); // explicit m wins
}

TEST_CASE("generated clauses have k distinct variables", "[generator]") {
  GenSpec spec;
  spec.var_count = 100;
  spec.clause_size = 5;
  spec.ratio = 21.117;
  spec.seed = 3;
  const Formula f = gen_uniform_ksat(spec);
  REQUIRE(f.clause_count() == 2112);
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    REQUIRE(f.clause(c).size() == 5);
    std::set<uint32_t> vars;
    for (Lit l : f.clause(c))
      vars.insert(lit_var(l));
    REQUIRE(vars.size() == 5);
  }
}

TEST_CASE("k equal to n forces all variables", "[generator]") {
  GenSpec spec;
  spec.var_count = 3;
  spec.clause_size = 3;
  spec.clause_count = 20;
  const Formula f = gen_uniform_ksat(spec);
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    std::set<uint32_t> vars;
    for (Lit l : f.clause(c))
      vars.insert(lit_var(l));
    CHECK(vars == std::set<uint32_t>{1, 2, 3});
  }
}

TEST_CASE("generation is deterministic in the seed", "[generator]") {
  GenSpec spec;
  spec.var_count = 50;
  spec.clause_size = 4;
  spec.ratio = 9.0;
  spec.seed = 99;
  const std::string once = write_dimacs(gen_uniform_ksat(spec),
                                        generator_comments(spec));
  const std::string twice = write_dimacs(gen_uniform_ksat(spec),
                                         generator_comments(spec));
  CHECK(once == twice);
  spec.seed = 100;
  CHECK(once != write_dimacs(gen_uniform_ksat(spec)));
}

TEST_CASE("generator comments record the spec", "[generator]") {
  GenSpec spec;
  spec.var_count = 10;
  spec.clause_size = 3;
  spec.ratio = 4.0;
  spec.seed = 5;
  const auto comments = generator_comments(spec);
  REQUIRE(!comments.empty());
  CHECK(comments[0] == "generator: uniform-ksat n=10 k=3 m=40 seed=5");
  const Formula f = gen_uniform_ksat(spec);
  CHECK(parse_dimacs(write_dimacs(f, comments)) == f);
}

TEST_CASE("invalid specs are rejected", "[generator]") {
  GenSpec spec;
  spec.var_count = 4;
  spec.clause_size = 5; // k > n
  spec.ratio = 2.0;
  CHECK_THROWS_AS(gen_uniform_ksat(spec), std::invalid_argument);
  spec.clause_size = 3;
  spec.ratio = -1.0;
  CHECK_THROWS_AS(gen_uniform_ksat(spec), std::invalid_argument);
  spec.ratio.reset();
  CHECK_THROWS_AS(gen_uniform_ksat(spec), std::invalid_argument);
  spec.ratio = 2.0;
  spec.clause_size = 1;
  CHECK_THROWS_AS(gen_uniform_ksat(spec), std::invalid_argument);
}

TEST_CASE("variable and polarity frequencies are balanced", "[generator]") {
  // 10^4 clauses, n=20, k=3: each variable appears with frequency ~3/20 and
  // each literal is positive with frequency ~1/2; both within 3 sigma.
  GenSpec spec;
  spec.var_count = 20;
  spec.clause_size = 3;
  spec.clause_count = 10'000;
  spec.seed = 8;
  const Formula f = gen_uniform_ksat(spec);

  std::vector<uint64_t> var_hits(21, 0);
  uint64_t positive = 0, total = 0;
  for (uint32_t c = 0; c < f.clause_count(); ++c) {
    for (Lit l : f.clause(c)) {
      ++var_hits[lit_var(l)];
      positive += lit_positive(l);
      ++total;
    }
  }
  REQUIRE(total == 30'000);

  const double p_var = 3.0 / 20.0; // per-clause appearance probability
  const double sigma_var =
      std::sqrt(p_var * (1 - p_var) / (double)spec.clause_count.value());
  for (uint32_t v = 1; v <= 20; ++v) {
    const double freq = (double)var_hits[v] / (double)spec.clause_count.value();
    CHECK(std::abs(freq - p_var) <= 3.0 * sigma_var);
  }
  const double sigma_pol = std::sqrt(0.25 / (double)total);
  CHECK(std::abs((double)positive / (double)total - 0.5) <= 3.0 * sigma_pol);
}

TEST_CASE("certification fixed points", "[generator]") {
  CHECK(certify_satisfiable(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")) ==
        Certificate::unsatisfiable);
  CHECK(certify_satisfiable(parse_dimacs("p cnf 3 0\n")) ==
        Certificate::satisfiable);
  CHECK(certify_satisfiable(parse_dimacs("p cnf 2 2\n1 -1 0\n2 0\n")) ==
        Certificate::satisfiable);
  // Pigeonhole-flavored: 3 variables, at most one true, at least two true.
  CHECK(certify_satisfiable(
            parse_dimacs("p cnf 3 6\n-1 -2 0\n-1 -3 0\n-2 -3 0\n"
                         "1 2 0\n1 3 0\n2 3 0\n")) ==
        Certificate::unsatisfiable);
}

TEST_CASE("truth table and backtracking certifiers agree", "[generator]") {
  GenSpec spec;
  spec.var_count = 12;
  spec.clause_size = 3;
  spec.ratio = 4.2;
  uint32_t sat = 0, unsat = 0;
  for (uint64_t seed = 1; seed <= 500; ++seed) {
    spec.seed = seed;
    const Formula f = gen_uniform_ksat(spec);
    const Certificate a = certify_truth_table(f);
    const Certificate b = certify_backtracking(f);
    REQUIRE(a == b);
    (a == Certificate::satisfiable ? sat : unsat) += 1;
  }
  // Near the 3-SAT threshold both verdicts should occur.
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("certifier bounds", "[generator]") {
  GenSpec spec;
  spec.var_count = 70;
  spec.clause_size = 3;
  spec.ratio = 1.0;
  spec.seed = 1;
  const Formula f = gen_uniform_ksat(spec);
  CHECK_THROWS_AS(certify_satisfiable(f), std::invalid_argument);
  CHECK_THROWS_AS(certify_truth_table(f), std::invalid_argument);
}

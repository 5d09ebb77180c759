#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "lutcode/cnf.hpp"
#include "lutcode/rng.hpp"

using namespace lutcode;

namespace {

bool model_satisfies(const CnfInstance& cnf, const SatOutcome& out) {
  for (const auto& cl : cnf.clauses) {
    bool sat = false;
    for (int lit : cl) sat = sat || ((lit > 0) == out.value(std::abs(lit)));
    if (!sat) return false;
  }
  return true;
}

// Exhaustive truth-table check, the independent ground truth for solve().
bool enumerate_sat(const CnfInstance& cnf) {
  REQUIRE(cnf.var_count <= 20);
  for (uint64_t m = 0; m < (1ull << cnf.var_count); ++m) {
    bool all = true;
    for (const auto& cl : cnf.clauses) {
      bool sat = false;
      for (int lit : cl) {
        bool v = (m >> (std::abs(lit) - 1)) & 1;
        sat = sat || ((lit > 0) == v);
      }
      all = all && sat;
      if (!all) break;
    }
    if (all) return true;
  }
  return false;
}

CnfInstance random_instance(uint64_t seed, int max_vars = 12) {
  CnfInstance cnf;
  cnf.var_count = 1 + static_cast<int>(rng::bounded(rng::hash(seed, 1), max_vars));
  int nclauses = 1 + static_cast<int>(rng::bounded(rng::hash(seed, 2), 30));
  for (int c = 0; c < nclauses; ++c) {
    int len = 1 + static_cast<int>(rng::bounded(rng::hash(seed, 3, c), 4));
    std::vector<int> cl;
    for (int l = 0; l < len; ++l) {
      int var = 1 + static_cast<int>(rng::bounded(rng::hash(seed, 4, c, l), cnf.var_count));
      cl.push_back(rng::hash(seed, 5, c, l) & 1 ? var : -var);
    }
    cnf.clauses.push_back(std::move(cl));
  }
  return cnf;
}

}  // namespace

TEST_CASE("contradictory units are unsatisfiable") {
  CnfInstance cnf;
  cnf.var_count = 1;
  cnf.clauses = {{1}, {-1}};
  CHECK(solve(cnf).status == SolveStatus::Unsatisfiable);
}

TEST_CASE("empty instance and single clause") {
  CnfInstance empty;
  CHECK(solve(empty).status == SolveStatus::Satisfiable);

  CnfInstance one;
  one.var_count = 2;
  one.clauses = {{1, -2}};
  SatOutcome out = solve(one);
  REQUIRE(out.status == SolveStatus::Satisfiable);
  CHECK(model_satisfies(one, out));
  // Lowest-index variable, false first: x1=false forces x2=false.
  CHECK(!out.value(1));
  CHECK(!out.value(2));
}

TEST_CASE("agrees with exhaustive enumeration on 300 random instances") {
  int sat_seen = 0, unsat_seen = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    CnfInstance cnf = random_instance(seed);
    bool expected = enumerate_sat(cnf);
    SatOutcome out = solve(cnf);
    if (expected) {
      REQUIRE(out.status == SolveStatus::Satisfiable);
      REQUIRE(model_satisfies(cnf, out));
      ++sat_seen;
    } else {
      REQUIRE(out.status == SolveStatus::Unsatisfiable);
      ++unsat_seen;
    }
  }
  // The generator must exercise both outcomes.
  CHECK(sat_seen > 30);
  CHECK(unsat_seen > 30);

  // A few larger instances, up to the 20-variable enumeration bound.
  for (uint64_t seed = 1000; seed < 1020; ++seed) {
    CnfInstance cnf = random_instance(seed, 20);
    SatOutcome out = solve(cnf);
    CHECK((out.status == SolveStatus::Satisfiable) == enumerate_sat(cnf));
    if (out.status == SolveStatus::Satisfiable) CHECK(model_satisfies(cnf, out));
  }
}

TEST_CASE("identical instances give identical assignments") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    CnfInstance cnf = random_instance(seed ^ 0xdead);
    SatOutcome a = solve(cnf);
    SatOutcome b = solve(cnf);
    CHECK(a.status == b.status);
    CHECK(a.assignment == b.assignment);
  }
}

TEST_CASE("budget exhaustion is an error, not UNSAT") {
  CnfInstance cnf;
  cnf.var_count = 2;
  cnf.clauses = {{1, 2}};
  CHECK_THROWS_AS(solve(cnf, SolveLimits{0}), BudgetExceeded);

  // Pigeonhole: 4 pigeons, 3 holes. Unsatisfiable, needs search.
  CnfInstance php;
  php.var_count = 12;  // var = 3*pigeon + hole + 1
  for (int pigeon = 0; pigeon < 4; ++pigeon)
    php.clauses.push_back({3 * pigeon + 1, 3 * pigeon + 2, 3 * pigeon + 3});
  for (int hole = 0; hole < 3; ++hole)
    for (int p1 = 0; p1 < 4; ++p1)
      for (int p2 = p1 + 1; p2 < 4; ++p2)
        php.clauses.push_back({-(3 * p1 + hole + 1), -(3 * p2 + hole + 1)});
  CHECK_THROWS_AS(solve(php, SolveLimits{2}), BudgetExceeded);
  CHECK(solve(php).status == SolveStatus::Unsatisfiable);
}

TEST_CASE("rejects out-of-range literals") {
  CnfInstance cnf;
  cnf.var_count = 1;
  cnf.clauses = {{2}};
  CHECK_THROWS_AS(solve(cnf), std::invalid_argument);
}

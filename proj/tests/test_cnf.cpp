#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "lutcode/cnf.hpp"
#include "lutcode/code_search.hpp"
#include "lutcode/experiments.hpp"
#include "lutcode/hamming.hpp"
#include "test_fixtures.hpp"

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

void check_wellformed(const CnfInstance& cnf) {
  for (const auto& cl : cnf.clauses) {
    CHECK(!cl.empty());
    for (int lit : cl) {
      CHECK(lit != 0);
      CHECK(std::abs(lit) <= cnf.var_count);
    }
  }
  // Every input role appears exactly once.
  std::map<std::tuple<int, int, int>, int> seen;
  for (const auto& [var, role] : cnf.var_map) {
    CHECK(var >= 1);
    CHECK(var <= cnf.var_count);
    if (role.kind != VarRole::Kind::Auxiliary)
      ++seen[{static_cast<int>(role.kind), role.a, role.b}];
  }
  for (const auto& [key, n] : seen) CHECK(n == 1);
}

}  // namespace

TEST_CASE("size estimate matches the closed forms") {
  CHECK(analytic_size_estimate(4, 3, 2) == CnfSizeEstimate{110, 28});
  CHECK(analytic_size_estimate(1, 1, 1) == CnfSizeEstimate{3, 1});
  CHECK(analytic_size_estimate(16, 4, 3) == CnfSizeEstimate{754, 174});
}

TEST_CASE("dimacs format") {
  CnfInstance cnf;
  cnf.var_count = 2;
  cnf.clauses = {{1, -2}};
  CHECK(to_dimacs(cnf) == "p cnf 2 1\n1 -2 0\n");

  CnfInstance empty;
  CHECK(to_dimacs(empty) == "p cnf 0 0\n");

  CnfInstance tagged = build_feasibility_cnf(parse_truth_table(fixtures::kDontCareTable), 0);
  std::string text = to_dimacs(tagged);
  CHECK(text.find("c var 1 h 1 1") == 0);
  CHECK(text.find("c var 7 dc 1 3") != std::string::npos);
  CHECK(text.find("p cnf ") != std::string::npos);
}

namespace {

// Minimal DIMACS reader so the exported text can be checked for semantic
// fidelity independent of the writer.
CnfInstance parse_dimacs(const std::string& text) {
  CnfInstance cnf;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    if (line[0] == 'p') {
      std::string p, kind;
      size_t nclauses;
      fields >> p >> kind >> cnf.var_count >> nclauses;
      continue;
    }
    std::vector<int> clause;
    int lit;
    while (fields >> lit && lit != 0) clause.push_back(lit);
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

}  // namespace

TEST_CASE("dimacs text reparses to an equisatisfiable instance") {
  TernaryLut dc = parse_truth_table(fixtures::kDontCareTable);
  TernaryLut full = parse_truth_table(fixtures::kFullTable);
  struct Case {
    CnfInstance cnf;
    SolveStatus expected;
  };
  std::vector<Case> cases = {
      {build_feasibility_cnf(dc, 0), SolveStatus::Satisfiable},
      {build_feasibility_cnf(full, 0), SolveStatus::Unsatisfiable},
      {build_feasibility_cnf(full, 2), SolveStatus::Satisfiable},
  };
  for (const Case& c : cases) {
    CnfInstance back = parse_dimacs(to_dimacs(c.cnf));
    CHECK(back.var_count == c.cnf.var_count);
    CHECK(back.clauses == c.cnf.clauses);
    CHECK(solve(back).status == c.expected);
  }
}

TEST_CASE("don't-care sample is feasible with no extra columns") {
  TernaryLut lut = parse_truth_table(fixtures::kDontCareTable);
  CnfInstance cnf = build_feasibility_cnf(lut, 0);
  check_wellformed(cnf);
  SatOutcome out = solve(cnf);
  REQUIRE(out.status == SolveStatus::Satisfiable);
  CHECK(model_satisfies(cnf, out));

  FeasibilityWitness w = extract_witness(cnf, out, lut, 0);
  CHECK(!w.H.invariant_violation());
  CHECK(w.H.t == 2);
  CHECK(w.H.c == 3);
  // Any valid 2x3 decoder matrix forces codewords {000, 111}, which pins
  // the don't-care assignment.
  CHECK(w.dc_assignment == std::vector<uint8_t>{0, 1, 1, 1});
}

TEST_CASE("fully specified sample is infeasible with 0 or 1 extra columns") {
  TernaryLut lut = parse_truth_table(fixtures::kFullTable);

  // Independent check for k = 0: all 6 arrangements of the three nonzero
  // 2-bit columns fail (row 001 forces column 3 to zero).
  std::vector<uint32_t> vals = {1, 2, 3};
  std::sort(vals.begin(), vals.end());
  int feasible = 0;
  do {
    bool ok = true;
    for (int r = 0; r < lut.rows && ok; ++r) {
      uint32_t syn = 0;
      for (int j = 0; j < 3; ++j)
        if (lut.at(r, j) == Trit::One) syn ^= vals[j];
      ok = syn == 0;
    }
    feasible += ok;
  } while (std::next_permutation(vals.begin(), vals.end()));
  CHECK(feasible == 0);

  CHECK(solve(build_feasibility_cnf(lut, 0)).status == SolveStatus::Unsatisfiable);
  CHECK(solve(build_feasibility_cnf(lut, 1)).status == SolveStatus::Unsatisfiable);
}

TEST_CASE("fully specified sample admits a hand-checked witness at k = 2") {
  TernaryLut lut = parse_truth_table(fixtures::kFullTable);

  // Fixed witness: H columns (1,0,0),(1,1,1),(0,1,1),(0,0,1),(0,1,0) and
  // extra bits 11,11,00,00. Checked here by direct multiplication, not via
  // the solver.
  DecoderMatrix h = fixtures::matrix_from_rows({"11000", "01101", "01110"});
  std::vector<uint32_t> expected_cols = {4, 7, 3, 1, 2};
  for (int j = 0; j < 5; ++j) CHECK(h.column_value(j) == expected_cols[j]);
  CHECK(!h.invariant_violation());
  std::vector<std::string> extended = {"00111", "11011", "11100", "11100"};
  for (const std::string& row : extended)
    for (uint8_t bit : gf2_row_times_ht(fixtures::bits(row), h)) CHECK(bit == 0);

  CnfInstance cnf = build_feasibility_cnf(lut, 2);
  check_wellformed(cnf);
  SatOutcome out = solve(cnf);
  REQUIRE(out.status == SolveStatus::Satisfiable);
  CHECK(model_satisfies(cnf, out));
  FeasibilityWitness w = extract_witness(cnf, out, lut, 2);
  CHECK(!w.H.invariant_violation());
  CHECK(w.extra.rows == 4);
  CHECK(w.extra.width == 2);
}

TEST_CASE("1x1 zero table is feasible with H = [1]") {
  TernaryLut lut;
  lut.rows = 1;
  lut.outputs = 1;
  lut.cells = {Trit::Zero};
  CnfInstance cnf = build_feasibility_cnf(lut, 0);
  SatOutcome out = solve(cnf);
  REQUIRE(out.status == SolveStatus::Satisfiable);
  FeasibilityWitness w = extract_witness(cnf, out, lut, 0);
  CHECK(w.H.t == 1);
  CHECK(w.H.c == 1);
  CHECK(w.H.at(0, 0) == 1);
}

TEST_CASE("an all-don't-care table is feasible with no extra columns") {
  TernaryLut lut;
  lut.rows = 3;
  lut.outputs = 4;
  lut.cells.assign(12, Trit::DontCare);
  SatOutcome out = solve(build_feasibility_cnf(lut, 0));
  CHECK(out.status == SolveStatus::Satisfiable);
}

TEST_CASE("encoding agrees with the exhaustive oracle on random tables") {
  OracleLimits limits{40, 7};
  int sat_count = 0, unsat_count = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    int rows = 1 + static_cast<int>(seed % 4);
    int outputs = 1 + static_cast<int>((seed / 4) % 3);
    double dcf = (seed % 5) * 0.125;
    TernaryLut lut = gen_random_lut(rows, outputs, 0.5, dcf, seed * 31 + 7);
    for (int k = 0; k <= 1; ++k) {
      bool oracle_says = brute_force_feasible(lut, k, limits).has_value();
      SatOutcome out = solve(build_feasibility_cnf(lut, k));
      CHECK((out.status == SolveStatus::Satisfiable) == oracle_says);
      oracle_says ? ++sat_count : ++unsat_count;
    }
  }
  CHECK(sat_count > 20);
  CHECK(unsat_count > 20);
}

TEST_CASE("witness reassembly always verifies") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    TernaryLut lut = gen_random_lut(1 + seed % 4, 1 + (seed / 3) % 3, 0.4, 0.4, seed ^ 0xfeed);
    for (int k = 0; k <= 2; ++k) {
      CnfInstance cnf = build_feasibility_cnf(lut, k);
      SatOutcome out = solve(cnf);
      if (out.status != SolveStatus::Satisfiable) continue;
      CHECK(model_satisfies(cnf, out));
      // extract_witness validates invariants and zero syndromes internally.
      CHECK_NOTHROW(extract_witness(cnf, out, lut, k));
    }
  }
}

TEST_CASE("extra columns change t as the width crosses a power of two") {
  TernaryLut lut = parse_truth_table(fixtures::kFullTable);
  CnfInstance k0 = build_feasibility_cnf(lut, 0);   // c = 3, t = 2
  CnfInstance k1 = build_feasibility_cnf(lut, 1);   // c = 4, t = 3
  auto count_h = [](const CnfInstance& cnf) {
    int n = 0;
    for (const auto& [var, role] : cnf.var_map) n += role.kind == VarRole::Kind::HEntry;
    return n;
  };
  CHECK(count_h(k0) == 2 * 3);
  CHECK(count_h(k1) == 3 * 4);
}

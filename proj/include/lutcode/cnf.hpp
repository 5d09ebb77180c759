#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lutcode/lut.hpp"

namespace lutcode {

/// What a SAT variable stands for. Indices are 1-based to match the
/// external text formats.
struct VarRole {
  enum class Kind : uint8_t {
    HEntry,      // decoder matrix bit, a = matrix row, b = column
    DcEntry,     // don't-care cell of the table, a = table row, b = output column
    ExtraEntry,  // redundant-column bit, a = table row, b = extra column
    Auxiliary,   // Tseitin gate output, a = gate id
  };
  Kind kind;
  int a = 0;
  int b = 0;

  bool operator==(const VarRole&) const = default;
};

/// A CNF formula plus the map tying variables back to decoder/table entries.
/// Literals are nonzero signed ints, positive meaning "variable true".
struct CnfInstance {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::pair<int, VarRole>> var_map;  // ascending variable id
};

/// Encodes "a valid decoder matrix exists for `lut` extended by
/// `extra_columns` redundant columns" with c = p + extra_columns and
/// t = t_rows(c):
///   - per (table row, matrix row): the parity constraint
///     XOR_j (cell_ij AND h_kj) = 0, with fixed cells folded in (a 0 cell
///     drops its term, a 1 cell contributes h_kj directly; only don't-care
///     and extra cells become AND gates) and the XOR chained left to right
///     with one fresh auxiliary per accumulation step;
///   - per column: one t-literal nonzero clause;
///   - per column pair: t XOR-difference auxiliaries and one t-literal
///     distinctness clause.
/// The result is satisfiable iff a decoder matrix with distinct nonzero
/// columns, a don't-care assignment, and extra-column values exist that
/// make every completed row a codeword.
CnfInstance build_feasibility_cnf(const TernaryLut& lut, int extra_columns);

enum class SolveStatus { Satisfiable, Unsatisfiable };

struct SatOutcome {
  SolveStatus status = SolveStatus::Unsatisfiable;
  std::vector<uint8_t> assignment;  // indexed by variable id, [1, var_count]; set when SAT

  bool value(int var) const { return assignment[var] != 0; }
};

struct SolveLimits {
  uint64_t max_steps = 10'000'000;  // decisions + conflicts
};

/// Thrown when a solve() call exhausts its step budget. Distinct from an
/// Unsatisfiable outcome by design: an interrupted search proves nothing.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(uint64_t steps_)
      : std::runtime_error("solver budget exceeded after " + std::to_string(steps_) + " steps"),
        steps(steps_) {}
  uint64_t steps;
};

/// Complete, deterministic SAT solver (CDCL with watched literals and
/// first-UIP learning). Branching picks the lowest-index unassigned
/// variable and tries false first, so identical instances always produce
/// identical outcomes and, when satisfiable, identical total assignments.
SatOutcome solve(const CnfInstance& cnf, const SolveLimits& limits = {});

/// Decoded satisfying assignment of a feasibility instance.
struct FeasibilityWitness {
  DecoderMatrix H;
  std::vector<uint8_t> dc_assignment;  // row-major over the table's DC cells
  BinaryLut extra;                     // l x extra_columns
};

/// Reads the decoder matrix, don't-care assignment, and extra-column grid
/// out of a satisfying assignment and checks them: H must satisfy its
/// invariants and the reassembled extended table must have all-zero
/// syndromes. Throws std::logic_error when a role is missing from var_map
/// or the witness fails the check.
FeasibilityWitness extract_witness(const CnfInstance& cnf, const SatOutcome& outcome,
                                   const TernaryLut& lut, int extra_columns);

/// Standard DIMACS CNF text. Comment lines (before the header) record the
/// var_map roles; the body is `p cnf <vars> <clauses>` followed by one
/// 0-terminated clause per line.
std::string to_dimacs(const CnfInstance& cnf);

struct CnfSizeEstimate {
  long long variables = 0;
  long long clauses = 0;

  bool operator==(const CnfSizeEstimate&) const = default;
};

/// Closed-form instance-size estimate for an l x p table with a t-row
/// decoder matrix: variables (4p-2)lt + p + C(p,2)(4t+1) and clauses
/// tp + (p-1)lt + C(p,2)t. Reporting only; build_feasibility_cnf does not
/// promise to match these counts.
CnfSizeEstimate analytic_size_estimate(long long l, long long p, long long t);

}  // namespace lutcode

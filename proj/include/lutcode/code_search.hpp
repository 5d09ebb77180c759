#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lutcode/cnf.hpp"
#include "lutcode/code_result.hpp"

namespace lutcode {

/// Thrown by find_min_code when the SAT budget runs out; `k_reached` is the
/// extra-column count whose feasibility check was interrupted.
struct SearchBudgetExceeded : std::runtime_error {
  SearchBudgetExceeded(int k, uint64_t steps_)
      : std::runtime_error("solver budget exceeded while testing " + std::to_string(k) +
                           " extra columns (" + std::to_string(steps_) + " steps)"),
        k_reached(k), steps(steps_) {}
  int k_reached;
  uint64_t steps;
};

/// Finds the smallest k in [0, delta(p)] whose feasibility encoding is
/// satisfiable and returns the decoded witness as a CodeResult. Feasibility
/// always holds at k = delta(p), so the search terminates. Optionally caps
/// the search at `max_extra`; returns nullopt when no k <= max_extra works.
std::optional<CodeResult> find_min_code_capped(const TernaryLut& lut, int max_extra,
                                               const SolveLimits& limits = {});
CodeResult find_min_code(const TernaryLut& lut, const SolveLimits& limits = {});

/// Size caps for the brute-force oracle.
struct OracleLimits {
  int max_free_bits = 20;  // don't-care cells plus extra-column bits
  int max_columns = 7;     // total coded width
};

struct OracleLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive check that some decoder matrix, don't-care assignment, and
/// extra-column grid exist for exactly `extra_columns` added columns.
/// Column tuples are enumerated in lexicographic order over ascending
/// column values; per row, the free don't-care and extra bits are scanned
/// in binary counting order. Returns the first witness found, so the
/// result is deterministic. Independent of the CNF/SAT path.
std::optional<CodeResult> brute_force_feasible(const TernaryLut& lut, int extra_columns,
                                               const OracleLimits& limits = {});

/// Runs brute_force_feasible for k = 0, 1, ... and returns the first hit;
/// the resulting k is minimal by construction.
CodeResult brute_force_min_code(const TernaryLut& lut, const OracleLimits& limits = {});

struct VerificationReport {
  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Check> checks;

  bool all_passed() const;
  std::string summary() const;
};

/// Checks every CodeResult invariant, exhaustive single-bit-flip recovery
/// on every row, and don't-care assignment consistency. Failures become
/// report entries, never exceptions.
VerificationReport verify_code(const CodeResult& result);

/// Stored-bit saving relative to always adding delta(p) parity columns:
/// 1 - (p + k) / (p + delta(p)).
double area_reduction(int p, int k);
double area_reduction(const CodeResult& result);

}  // namespace lutcode

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lutcode/code_result.hpp"

namespace lutcode {

/// Variants of the per-row single-error-survival formula chi.
enum class ChiMode {
  /// (1-q)^w + (w-1) q (1-q)^(w-1) with w = n + s: coefficient one short of
  /// the number of single-error patterns. Kept for comparison against the
  /// binomial form.
  PaperExact,
  /// (1-q)^w + w q (1-q)^(w-1): the probability of at most one flipped bit
  /// among w independent bits. The default.
  ExactBinomial,
};

/// Probability that n*f independently stored bits are all fault free.
double psi(int n, long long f, double q);

/// Probability that a single stored row of n data + s parity bits survives
/// single-error correction (see ChiMode).
double chi(int n, int s, double q, ChiMode mode = ChiMode::ExactBinomial);

/// One population of equally shaped rows.
struct ProfileGroup {
  int n = 1;         // data width
  int s = 0;         // parity width
  long long f = 1;   // number of rows
};

struct ReliabilityProfile {
  std::vector<ProfileGroup> groups;
  double q = 0.0;  // per-bit defect probability
};

/// Product over groups of chi(n,s,q)^f (corrected) or (1-q)^(n*f)
/// (uncorrected, data bits only).
double chip_yield(const ReliabilityProfile& profile, bool corrected,
                  ChiMode mode = ChiMode::ExactBinomial);

struct YieldEstimate {
  double estimate = 0.0;
  uint64_t trials = 0;
  uint64_t successes = 0;
  double std_error = 0.0;
};

struct SimulationResult {
  YieldEstimate chip;
  std::vector<YieldEstimate> per_block;
};

/// Monte Carlo fault injection: per trial every stored bit of every block
/// flips independently with probability q, every row is syndrome-decoded,
/// and a block succeeds iff all its rows decode back to the stored values.
/// The per-bit random stream is a pure function of (seed, trial, block,
/// bit index), so results are identical for any `jobs` value.
SimulationResult simulate_yield(std::span<const CodeResult> blocks, double q, uint64_t trials,
                                uint64_t seed, int jobs = 1);

}  // namespace lutcode

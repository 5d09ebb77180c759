#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lutcode/code_search.hpp"
#include "lutcode/reliability.hpp"

namespace lutcode {

/// Random ternary LUT: each cell is 1 with probability p_one, then exactly
/// floor(dc_fraction * rows * outputs) distinct cells, picked uniformly
/// without replacement, become don't-cares. Counter-based streams make the
/// result a pure function of the arguments.
TernaryLut gen_random_lut(int rows, int outputs, double p_one, double dc_fraction, uint64_t seed);

/// Tabular experiment output: `#`-prefixed metadata lines, a header row,
/// then data rows. Cells are preformatted so CSV and JSON renderings are
/// byte-stable.
struct OutputTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;  // "csv" or "json"
};

/// Locale-independent shortest-ish float formatting used in all tables.
std::string format_double(double v);

/// Runs fn(0..count-1) on `jobs` threads; results must land in
/// caller-provided per-index slots so ordering cannot matter.
void run_parallel(int jobs, long long count, const std::function<void(long long)>& fn);

struct Fig2Config {
  std::vector<std::pair<int, int>> shapes = {{8, 3}, {16, 4}};  // (rows, outputs)
  int samples = 500;
  uint64_t seed = 1;
  uint64_t budget = 10'000'000;
  int jobs = 1;
};

struct Fig2Scenario {
  std::string name;
  int rows = 0;
  int outputs = 0;
  double p_one = 0.5;
  double dc_fraction = 0.0;
  std::vector<long long> k_histogram;  // index = extra columns, size delta(p)+1
  long long budget_exceeded = 0;
  long long completed = 0;
  double mean_area = 0.0, min_area = 0.0, max_area = 0.0;
};

struct Fig2Result {
  Fig2Config config;
  std::vector<Fig2Scenario> scenarios;

  OutputTable histogram_table() const;
  OutputTable area_table() const;
};

/// Redundancy-reduction study: for every shape and every scenario in
/// {symmetric, skewed} x {no don't-cares, 50% don't-cares}, encode
/// `samples` random LUTs with the minimal-column search and histogram the
/// required extra columns. Every completed sample is re-verified.
Fig2Result run_fig2(const Fig2Config& config);

/// Chip-yield grid for a population of 16-row blocks split 50/50 between
/// 3-output and 4-output LUTs, each with the default 3 parity columns.
struct YieldGridConfig {
  double q_min = 1e-5;
  double q_max = 16e-5;
  int q_steps = 16;
  long long blocks = 1LL << 16;
  int rows_per_block = 16;
  uint64_t mc_trials = 0;   // 0 disables the Monte Carlo columns
  long long mc_blocks = 32; // scaled-down population for Monte Carlo
  uint64_t seed = 1;
  int jobs = 1;
};
OutputTable run_yield_grid(const YieldGridConfig& config);

/// Block-yield sweep for 2-output LUTs: corrected rows store 2 + 3 bits,
/// uncorrected rows store the 2 data bits only; block sizes are rows per
/// block, swept over powers of two.
struct Fig5Config {
  std::vector<double> qs = {0.01, 0.001};
  int r_min = 2;
  int r_max = 2048;
  ChiMode mode = ChiMode::ExactBinomial;
};
OutputTable run_fig5(const Fig5Config& config);

}  // namespace lutcode

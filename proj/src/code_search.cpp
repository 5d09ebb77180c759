#include "lutcode/code_search.hpp"

#include <algorithm>
#include <sstream>

#include "lutcode/hamming.hpp"

namespace lutcode {

namespace {

CodeResult assemble(const TernaryLut& lut, int k, const FeasibilityWitness& w) {
  BinaryLut completed = complete(lut, w.dc_assignment);
  BinaryLut coded;
  coded.rows = lut.rows;
  coded.width = lut.outputs + k;
  coded.bits.resize(static_cast<size_t>(coded.rows) * coded.width);
  for (int r = 0; r < lut.rows; ++r) {
    for (int j = 0; j < lut.outputs; ++j) coded.set(r, j, completed.at(r, j));
    for (int e = 0; e < k; ++e) coded.set(r, lut.outputs + e, w.extra.at(r, e));
  }
  return CodeResult{lut, k, std::move(coded), w.H, w.dc_assignment};
}

}  // namespace

std::optional<CodeResult> find_min_code_capped(const TernaryLut& lut, int max_extra,
                                               const SolveLimits& limits) {
  if (lut.rows < 1 || lut.outputs < 1)
    throw std::invalid_argument("find_min_code requires a non-empty table");
  for (int k = 0; k <= max_extra; ++k) {
    CnfInstance cnf = build_feasibility_cnf(lut, k);
    SatOutcome outcome;
    try {
      outcome = solve(cnf, limits);
    } catch (const BudgetExceeded& e) {
      throw SearchBudgetExceeded(k, e.steps);
    }
    if (outcome.status == SolveStatus::Satisfiable)
      return assemble(lut, k, extract_witness(cnf, outcome, lut, k));
  }
  return std::nullopt;
}

CodeResult find_min_code(const TernaryLut& lut, const SolveLimits& limits) {
  auto result = find_min_code_capped(lut, delta(lut.outputs), limits);
  if (!result)
    throw std::logic_error("no feasible code up to delta(p) extra columns");  // unreachable
  return *result;
}

namespace {

// Backtracking enumeration of ordered tuples of distinct nonzero t-bit
// column values in lexicographic order, with a per-row existence check for
// the free (don't-care and extra) bits once the tuple is complete.
class OracleSearch {
 public:
  OracleSearch(const TernaryLut& lut, int k) : lut_(lut), k_(k), p_(lut.outputs) {
    c_ = p_ + k_;
    t_ = t_rows(c_);
    rows_ = lut.rows;
    fixed_cols_.resize(rows_);
    free_cols_.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      for (int j = 0; j < p_; ++j) {
        if (lut.at(r, j) == Trit::One) fixed_cols_[r].push_back(j);
        else if (lut.at(r, j) == Trit::DontCare) free_cols_[r].push_back(j);
      }
      for (int e = 0; e < k_; ++e) free_cols_[r].push_back(p_ + e);
    }
  }

  std::optional<CodeResult> run() {
    cols_.assign(c_, 0);
    used_.assign(1u << t_, 0);
    if (place(0)) return build_result();
    return std::nullopt;
  }

 private:
  bool place(int j) {
    if (j == c_) return feasible_rows();
    for (uint32_t v = 1; v < (1u << t_); ++v) {
      if (used_[v]) continue;
      cols_[j] = v;
      used_[v] = 1;
      if (place(j + 1)) return true;
      used_[v] = 0;
    }
    return false;
  }

  // A row is realizable iff some choice of its free bits cancels the fixed
  // part of the syndrome. Free masks are scanned in binary counting order
  // with the first free column as the most significant bit.
  bool feasible_rows() {
    row_choice_.assign(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
      uint32_t base = 0;
      for (int j : fixed_cols_[r]) base ^= cols_[j];
      int m = static_cast<int>(free_cols_[r].size());
      bool found = false;
      for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        uint32_t syn = base;
        for (int b = 0; b < m; ++b)
          if (mask & (1u << (m - 1 - b))) syn ^= cols_[free_cols_[r][b]];
        if (syn == 0) {
          row_choice_[r] = mask;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  CodeResult build_result() const {
    CodeResult result;
    result.source = lut_;
    result.k = k_;
    result.H.t = t_;
    result.H.c = c_;
    result.H.bits.resize(static_cast<size_t>(t_) * c_);
    for (int j = 0; j < c_; ++j)
      for (int k = 0; k < t_; ++k) result.H.set(k, j, (cols_[j] >> (t_ - 1 - k)) & 1);

    result.coded.rows = rows_;
    result.coded.width = c_;
    result.coded.bits.resize(static_cast<size_t>(rows_) * c_);
    for (int r = 0; r < rows_; ++r) {
      for (int j = 0; j < p_; ++j)
        if (lut_.at(r, j) == Trit::One) result.coded.set(r, j, 1);
      int m = static_cast<int>(free_cols_[r].size());
      for (int b = 0; b < m; ++b)
        result.coded.set(r, free_cols_[r][b], (row_choice_[r] >> (m - 1 - b)) & 1);
    }
    for (auto [r, col] : lut_.dc_cells()) result.dc_assignment.push_back(result.coded.at(r, col));
    return result;
  }

  const TernaryLut& lut_;
  int k_, p_, c_, t_, rows_;
  std::vector<std::vector<int>> fixed_cols_;
  std::vector<std::vector<int>> free_cols_;
  std::vector<uint32_t> cols_;
  std::vector<uint8_t> used_;
  std::vector<uint32_t> row_choice_;
};

}  // namespace

std::optional<CodeResult> brute_force_feasible(const TernaryLut& lut, int extra_columns,
                                               const OracleLimits& limits) {
  if (lut.rows < 1 || lut.outputs < 1)
    throw std::invalid_argument("oracle requires a non-empty table");
  int free_bits = lut.dc_count() + lut.rows * extra_columns;
  int c = lut.outputs + extra_columns;
  if (free_bits > limits.max_free_bits)
    throw OracleLimitExceeded("oracle cap exceeded: " + std::to_string(free_bits) +
                              " free bits > " + std::to_string(limits.max_free_bits));
  if (c > limits.max_columns)
    throw OracleLimitExceeded("oracle cap exceeded: " + std::to_string(c) + " columns > " +
                              std::to_string(limits.max_columns));
  return OracleSearch(lut, extra_columns).run();
}

CodeResult brute_force_min_code(const TernaryLut& lut, const OracleLimits& limits) {
  for (int k = 0; k <= delta(lut.outputs); ++k)
    if (auto result = brute_force_feasible(lut, k, limits)) return *result;
  throw std::logic_error("oracle found no feasible code up to delta(p)");  // unreachable
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return out.str();
}

VerificationReport verify_code(const CodeResult& result) {
  VerificationReport report;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const TernaryLut& src = result.source;
  int p = src.outputs;
  bool shape_ok = result.coded.rows == src.rows && result.coded.width == p + result.k &&
                  result.H.c == p + result.k;
  add("shape", shape_ok, shape_ok ? "" : "coded or decoder dimensions do not match source");
  if (!shape_ok) return report;

  if (auto err = result.H.invariant_violation())
    add("decoder_columns", false, *err);
  else
    add("decoder_columns", true);
  add("decoder_rows", result.H.t == t_rows(result.H.c),
      result.H.t == t_rows(result.H.c) ? "" : "t != t_rows(p + k)");
  add("k_range", result.k >= 0 && result.k <= delta(p));

  bool zero_syndrome = true;
  for (int r = 0; r < result.coded.rows && zero_syndrome; ++r) {
    auto syn = gf2_row_times_ht(result.coded.row(r), result.H);
    for (uint8_t b : syn) zero_syndrome = zero_syndrome && !b;
  }
  add("zero_syndromes", zero_syndrome, zero_syndrome ? "" : "a coded row is not a codeword");

  bool fixed_ok = true;
  for (int r = 0; r < src.rows && fixed_ok; ++r)
    for (int c = 0; c < p && fixed_ok; ++c) {
      Trit v = src.at(r, c);
      if (v != Trit::DontCare) fixed_ok = result.coded.at(r, c) == static_cast<uint8_t>(v);
    }
  add("fixed_cells", fixed_ok, fixed_ok ? "" : "a fixed source cell was altered");

  bool dc_ok = static_cast<int>(result.dc_assignment.size()) == src.dc_count();
  if (dc_ok) {
    BinaryLut completed = complete(src, result.dc_assignment);
    for (int r = 0; r < src.rows && dc_ok; ++r)
      for (int c = 0; c < p && dc_ok; ++c) dc_ok = completed.at(r, c) == result.coded.at(r, c);
  }
  add("dc_assignment", dc_ok,
      dc_ok ? "" : "dc_assignment does not reproduce the coded data columns");

  bool decode_ok = true;
  std::string decode_detail;
  for (int r = 0; r < result.coded.rows && decode_ok; ++r) {
    std::vector<uint8_t> original = result.coded.row(r);
    for (int pos = 1; pos <= result.coded.width && decode_ok; ++pos) {
      auto corrupted = flip_bits(original, std::vector<int>{pos});
      CorrectionOutcome out = correct(corrupted, result.H);
      decode_ok = out.tag == CorrectionOutcome::Tag::Corrected && out.position == pos &&
                  out.corrected_row == original;
      if (!decode_ok)
        decode_detail = "row " + std::to_string(r + 1) + " bit " + std::to_string(pos) +
                        " did not decode back";
    }
  }
  add("single_flip_recovery", decode_ok, decode_detail);
  return report;
}

double area_reduction(int p, int k) {
  return 1.0 - static_cast<double>(p + k) / static_cast<double>(p + delta(p));
}

double area_reduction(const CodeResult& result) {
  return area_reduction(result.source.outputs, result.k);
}

}  // namespace lutcode

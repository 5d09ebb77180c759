#include "lutcode/cnf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lutcode/hamming.hpp"

namespace lutcode {

namespace {

class CnfBuilder {
 public:
  CnfBuilder(const TernaryLut& lut, int extra_columns)
      : lut_(lut), k_(extra_columns), p_(lut.outputs), c_(lut.outputs + extra_columns),
        t_(t_rows(lut.outputs + extra_columns)) {}

  CnfInstance build() {
    allocate_inputs();
    for (int i = 0; i < lut_.rows; ++i)
      for (int k = 0; k < t_; ++k) add_parity_constraint(i, k);
    add_column_nonzero();
    add_column_distinct();
    return std::move(cnf_);
  }

 private:
  int h_var(int k, int j) const { return k * c_ + j + 1; }  // k, j 0-based
  int dc_var(int i, int j) const { return dc_base_ + dc_index_.at({i, j}); }
  int extra_var(int i, int e) const { return extra_base_ + i * k_ + e; }

  int fresh_aux() {
    int v = ++cnf_.var_count;
    cnf_.var_map.emplace_back(v, VarRole{VarRole::Kind::Auxiliary, ++aux_count_, 0});
    return v;
  }

  void clause(std::initializer_list<int> lits) { cnf_.clauses.emplace_back(lits); }

  // g <-> a AND b
  int and_gate(int a, int b) {
    int g = fresh_aux();
    clause({-g, a});
    clause({-g, b});
    clause({g, -a, -b});
    return g;
  }

  // z <-> a XOR b
  int xor_gate(int a, int b) {
    int z = fresh_aux();
    clause({-z, a, b});
    clause({-z, -a, -b});
    clause({z, -a, b});
    clause({z, a, -b});
    return z;
  }

  void allocate_inputs() {
    // Variable layout: H entries row-major, then DC cells row-major, then
    // extra-column entries row-major, then auxiliaries in creation order.
    for (int k = 0; k < t_; ++k)
      for (int j = 0; j < c_; ++j)
        cnf_.var_map.emplace_back(h_var(k, j), VarRole{VarRole::Kind::HEntry, k + 1, j + 1});
    cnf_.var_count = t_ * c_;

    dc_base_ = cnf_.var_count + 1;
    int idx = 0;
    for (auto [r, col] : lut_.dc_cells()) {
      dc_index_[{r, col}] = idx++;
      cnf_.var_map.emplace_back(dc_base_ + dc_index_[{r, col}],
                                VarRole{VarRole::Kind::DcEntry, r + 1, col + 1});
    }
    cnf_.var_count += idx;

    extra_base_ = cnf_.var_count + 1;
    for (int i = 0; i < lut_.rows; ++i)
      for (int e = 0; e < k_; ++e)
        cnf_.var_map.emplace_back(extra_var(i, e),
                                  VarRole{VarRole::Kind::ExtraEntry, i + 1, e + 1});
    cnf_.var_count += lut_.rows * k_;
  }

  // XOR over the row's terms must be 0. Constant cells are folded: a fixed
  // 0 cell contributes nothing, a fixed 1 cell contributes h_kj itself.
  void add_parity_constraint(int i, int k) {
    std::vector<int> terms;
    for (int j = 0; j < p_; ++j) {
      switch (lut_.at(i, j)) {
        case Trit::Zero: break;
        case Trit::One: terms.push_back(h_var(k, j)); break;
        case Trit::DontCare: terms.push_back(and_gate(dc_var(i, j), h_var(k, j))); break;
      }
    }
    for (int e = 0; e < k_; ++e)
      terms.push_back(and_gate(extra_var(i, e), h_var(k, p_ + e)));

    if (terms.empty()) return;  // an all-zero row is a codeword for any H
    int acc = terms[0];
    for (size_t n = 1; n < terms.size(); ++n) acc = xor_gate(acc, terms[n]);
    clause({-acc});
  }

  void add_column_nonzero() {
    for (int j = 0; j < c_; ++j) {
      std::vector<int> lits;
      for (int k = 0; k < t_; ++k) lits.push_back(h_var(k, j));
      cnf_.clauses.push_back(std::move(lits));
    }
  }

  void add_column_distinct() {
    for (int j1 = 0; j1 < c_; ++j1) {
      for (int j2 = j1 + 1; j2 < c_; ++j2) {
        std::vector<int> lits;
        for (int k = 0; k < t_; ++k) lits.push_back(xor_gate(h_var(k, j1), h_var(k, j2)));
        cnf_.clauses.push_back(std::move(lits));
      }
    }
  }

  const TernaryLut& lut_;
  int k_, p_, c_, t_;
  CnfInstance cnf_;
  std::map<std::pair<int, int>, int> dc_index_;
  int dc_base_ = 0;
  int extra_base_ = 0;
  int aux_count_ = 0;
};

}  // namespace

CnfInstance build_feasibility_cnf(const TernaryLut& lut, int extra_columns) {
  if (extra_columns < 0) throw std::invalid_argument("extra_columns must be >= 0");
  if (lut.rows < 1 || lut.outputs < 1)
    throw std::invalid_argument("feasibility encoding requires a non-empty table");
  return CnfBuilder(lut, extra_columns).build();
}

FeasibilityWitness extract_witness(const CnfInstance& cnf, const SatOutcome& outcome,
                                   const TernaryLut& lut, int extra_columns) {
  if (outcome.status != SolveStatus::Satisfiable)
    throw std::logic_error("extract_witness requires a satisfiable outcome");

  int c = lut.outputs + extra_columns;
  int t = t_rows(c);

  FeasibilityWitness w;
  w.H.t = t;
  w.H.c = c;
  w.H.bits.assign(static_cast<size_t>(t) * c, 2);  // 2 marks "not seen yet"
  w.dc_assignment.assign(lut.dc_count(), 2);
  w.extra.rows = lut.rows;
  w.extra.width = extra_columns;
  w.extra.bits.assign(static_cast<size_t>(lut.rows) * extra_columns, 2);

  auto dc_positions = lut.dc_cells();
  auto dc_rank = [&](int row1, int col1) {
    for (size_t n = 0; n < dc_positions.size(); ++n)
      if (dc_positions[n].first == row1 - 1 && dc_positions[n].second == col1 - 1)
        return static_cast<int>(n);
    return -1;
  };

  for (const auto& [var, role] : cnf.var_map) {
    uint8_t bit = outcome.value(var) ? 1 : 0;
    switch (role.kind) {
      case VarRole::Kind::HEntry: w.H.set(role.a - 1, role.b - 1, bit); break;
      case VarRole::Kind::DcEntry: {
        int rank = dc_rank(role.a, role.b);
        if (rank < 0) throw std::logic_error("DcEntry role does not match a don't-care cell");
        w.dc_assignment[rank] = bit;
        break;
      }
      case VarRole::Kind::ExtraEntry: w.extra.set(role.a - 1, role.b - 1, bit); break;
      case VarRole::Kind::Auxiliary: break;
    }
  }

  auto unseen = [](uint8_t b) { return b == 2; };
  if (std::any_of(w.H.bits.begin(), w.H.bits.end(), unseen))
    throw std::logic_error("HEntry role missing from var_map");
  if (std::any_of(w.dc_assignment.begin(), w.dc_assignment.end(), unseen))
    throw std::logic_error("DcEntry role missing from var_map");
  if (std::any_of(w.extra.bits.begin(), w.extra.bits.end(), unseen))
    throw std::logic_error("ExtraEntry role missing from var_map");

  if (auto err = w.H.invariant_violation())
    throw std::logic_error("witness decoder matrix invalid: " + *err);
  BinaryLut completed = complete(lut, w.dc_assignment);
  for (int r = 0; r < lut.rows; ++r) {
    std::vector<uint8_t> row = completed.row(r);
    for (int e = 0; e < extra_columns; ++e) row.push_back(w.extra.at(r, e));
    for (uint8_t bit : gf2_row_times_ht(row, w.H))
      if (bit) throw std::logic_error("witness row " + std::to_string(r + 1) +
                                      " has a nonzero syndrome");
  }
  return w;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  for (const auto& [var, role] : cnf.var_map) {
    out << "c var " << var << ' ';
    switch (role.kind) {
      case VarRole::Kind::HEntry: out << "h " << role.a << ' ' << role.b; break;
      case VarRole::Kind::DcEntry: out << "dc " << role.a << ' ' << role.b; break;
      case VarRole::Kind::ExtraEntry: out << "extra " << role.a << ' ' << role.b; break;
      case VarRole::Kind::Auxiliary: out << "aux " << role.a; break;
    }
    out << '\n';
  }
  out << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& cl : cnf.clauses) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfSizeEstimate analytic_size_estimate(long long l, long long p, long long t) {
  if (l < 1 || p < 1 || t < 1)
    throw std::invalid_argument("analytic_size_estimate requires l, p, t >= 1");
  long long pairs = p * (p - 1) / 2;
  CnfSizeEstimate e;
  e.variables = (4 * p - 2) * l * t + p + pairs * (4 * t + 1);
  e.clauses = t * p + (p - 1) * l * t + pairs * t;
  return e;
}

}  // namespace lutcode

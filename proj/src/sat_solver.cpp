#include <algorithm>
#include <cstdlib>

#include "lutcode/cnf.hpp"

// Conflict-driven clause learning with two watched literals. The search is
// fully deterministic: decisions always pick the lowest-index unassigned
// variable with polarity false first, propagation follows watch-list order,
// and there are no restarts or randomized heuristics. Learned clauses use
// the first unique implication point.

namespace lutcode {

namespace {

constexpr int kNoReason = -1;

class Solver {
 public:
  Solver(const CnfInstance& cnf, const SolveLimits& limits)
      : nvars_(cnf.var_count), limits_(limits) {
    value_.assign(nvars_ + 1, 0);
    level_.assign(nvars_ + 1, 0);
    reason_.assign(nvars_ + 1, kNoReason);
    seen_.assign(nvars_ + 1, 0);
    watches_.assign(2 * (nvars_ + 1), {});
    for (const auto& cl : cnf.clauses)
      if (!add_clause(cl)) {
        contradiction_ = true;
        return;
      }
  }

  SatOutcome run() {
    SatOutcome out;
    if (contradiction_) return out;

    while (true) {
      int confl = propagate();
      if (confl != kNoReason) {
        if (level() == 0) return out;  // refuted at the root: UNSAT
        step();
        std::vector<int> learnt;
        int back_level = analyze(confl, learnt);
        backtrack(back_level);
        attach_learnt(learnt);
      } else {
        int var = next_unassigned();
        if (var == 0) {
          out.status = SolveStatus::Satisfiable;
          out.assignment.assign(nvars_ + 1, 0);
          for (int v = 1; v <= nvars_; ++v) out.assignment[v] = value_[v] > 0;
          return out;
        }
        step();
        trail_lim_.push_back(trail_.size());
        enqueue(-var, kNoReason);  // false-first branching
      }
    }
  }

 private:
  static int windex(int lit) { return 2 * std::abs(lit) + (lit < 0 ? 1 : 0); }

  int8_t lit_value(int lit) const {
    int8_t v = value_[std::abs(lit)];
    return lit > 0 ? v : static_cast<int8_t>(-v);
  }

  int level() const { return static_cast<int>(trail_lim_.size()); }

  void step() {
    if (++steps_ > limits_.max_steps) throw BudgetExceeded(steps_);
  }

  // Returns false on an immediate root-level contradiction.
  bool add_clause(const std::vector<int>& raw) {
    std::vector<int> cl(raw);
    std::sort(cl.begin(), cl.end(), [](int a, int b) {
      int va = std::abs(a), vb = std::abs(b);
      return va != vb ? va < vb : a > b;
    });
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    for (size_t n = 1; n < cl.size(); ++n)
      if (cl[n] == -cl[n - 1]) return true;  // tautology
    if (cl.empty()) return false;
    if (cl.size() == 1) {
      if (lit_value(cl[0]) < 0) return false;
      if (lit_value(cl[0]) == 0) enqueue(cl[0], kNoReason);
      return true;
    }
    attach(std::move(cl));
    return true;
  }

  void attach(std::vector<int> cl) {
    int idx = static_cast<int>(clauses_.size());
    watches_[windex(cl[0])].push_back(idx);
    watches_[windex(cl[1])].push_back(idx);
    clauses_.push_back(std::move(cl));
  }

  void enqueue(int lit, int reason) {
    int var = std::abs(lit);
    value_[var] = lit > 0 ? 1 : -1;
    level_[var] = level();
    reason_[var] = reason;
    trail_.push_back(lit);
  }

  // Standard two-watch propagation; returns a conflicting clause index or
  // kNoReason.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      std::vector<int>& wl = watches_[windex(-lit)];
      size_t keep = 0;
      for (size_t n = 0; n < wl.size(); ++n) {
        int ci = wl[n];
        std::vector<int>& cl = clauses_[ci];
        if (cl[0] == -lit) std::swap(cl[0], cl[1]);
        // cl[1] == -lit is now false.
        if (lit_value(cl[0]) > 0) {
          wl[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (size_t m = 2; m < cl.size(); ++m) {
          if (lit_value(cl[m]) >= 0) {
            std::swap(cl[1], cl[m]);
            watches_[windex(cl[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[keep++] = ci;
        if (lit_value(cl[0]) < 0) {
          while (n + 1 < wl.size()) wl[keep++] = wl[++n];
          wl.resize(keep);
          return ci;
        }
        enqueue(cl[0], ci);
      }
      wl.resize(keep);
    }
    return kNoReason;
  }

  // First-UIP conflict analysis. Fills `learnt` (asserting literal first)
  // and returns the backjump level.
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.push_back(0);  // slot for the asserting literal
    int counter = 0;
    int lit = 0;
    size_t trail_pos = trail_.size();

    do {
      const std::vector<int>& cl = clauses_[confl];
      for (size_t n = (lit == 0 ? 0 : 1); n < cl.size(); ++n) {
        int q = cl[n];
        int var = std::abs(q);
        if (seen_[var] || level_[var] == 0) continue;
        seen_[var] = 1;
        if (level_[var] == level()) {
          ++counter;
        } else {
          learnt.push_back(q);
        }
      }
      while (!seen_[std::abs(trail_[--trail_pos])]) {
      }
      lit = trail_[trail_pos];
      seen_[std::abs(lit)] = 0;
      confl = reason_[std::abs(lit)];
      --counter;
    } while (counter > 0);
    learnt[0] = -lit;

    int back = 0;
    size_t at = 1;
    for (size_t n = 1; n < learnt.size(); ++n) {
      int lv = level_[std::abs(learnt[n])];
      if (lv > back) {
        back = lv;
        at = n;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[at]);
    for (size_t n = 1; n < learnt.size(); ++n) seen_[std::abs(learnt[n])] = 0;
    return back;
  }

  void backtrack(int to_level) {
    while (static_cast<int>(trail_lim_.size()) > to_level) {
      size_t bound = trail_lim_.back();
      trail_lim_.pop_back();
      while (trail_.size() > bound) {
        int var = std::abs(trail_.back());
        value_[var] = 0;
        reason_[var] = kNoReason;
        trail_.pop_back();
      }
    }
    if (qhead_ > trail_.size()) qhead_ = trail_.size();
    search_from_ = 1;
  }

  void attach_learnt(std::vector<int>& learnt) {
    if (learnt.size() == 1) {
      enqueue(learnt[0], kNoReason);
      return;
    }
    int idx = static_cast<int>(clauses_.size());
    watches_[windex(learnt[0])].push_back(idx);
    watches_[windex(learnt[1])].push_back(idx);
    clauses_.push_back(learnt);
    enqueue(learnt[0], idx);
  }

  int next_unassigned() {
    for (int v = search_from_; v <= nvars_; ++v) {
      if (value_[v] == 0) {
        search_from_ = v;
        return v;
      }
    }
    return 0;
  }

  int nvars_;
  SolveLimits limits_;
  bool contradiction_ = false;
  uint64_t steps_ = 0;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by windex(lit)
  std::vector<int8_t> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<uint8_t> seen_;
  std::vector<int> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  int search_from_ = 1;
};

}  // namespace

SatOutcome solve(const CnfInstance& cnf, const SolveLimits& limits) {
  for (const auto& cl : cnf.clauses)
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > cnf.var_count)
        throw std::invalid_argument("literal out of range in CNF instance");
  return Solver(cnf, limits).run();
}

}  // namespace lutcode

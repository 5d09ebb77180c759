#include "lutcode/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lutcode/hamming.hpp"
#include "lutcode/rng.hpp"

namespace lutcode {

namespace {

void check_probability(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("defect probability must be in [0,1]");
}

// (1-q)^e without cancellation for tiny q.
double pow_1mq(double q, double e) {
  if (e == 0.0) return 1.0;
  if (q == 1.0) return 0.0;
  return std::exp(e * std::log1p(-q));
}

}  // namespace

double psi(int n, long long f, double q) {
  if (n < 1 || f < 1) throw std::invalid_argument("psi requires n >= 1 and f >= 1");
  check_probability(q);
  return pow_1mq(q, static_cast<double>(n) * static_cast<double>(f));
}

double chi(int n, int s, double q, ChiMode mode) {
  if (n < 1 || s < 0) throw std::invalid_argument("chi requires n >= 1 and s >= 0");
  check_probability(q);
  int w = n + s;
  double coeff = mode == ChiMode::ExactBinomial ? w : w - 1;
  return pow_1mq(q, w) + coeff * q * pow_1mq(q, w - 1);
}

double chip_yield(const ReliabilityProfile& profile, bool corrected, ChiMode mode) {
  check_probability(profile.q);
  double yield = 1.0;
  for (const ProfileGroup& g : profile.groups) {
    if (g.n < 1 || g.f < 1) throw std::invalid_argument("profile group requires n, f >= 1");
    if (corrected) {
      double row = chi(g.n, g.s, profile.q, mode);
      yield *= row <= 0.0 ? 0.0 : std::exp(static_cast<double>(g.f) * std::log(row));
    } else {
      yield *= psi(g.n, g.f, profile.q);
    }
  }
  return yield;
}

namespace {

YieldEstimate make_estimate(uint64_t successes, uint64_t trials) {
  YieldEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  return e;
}

}  // namespace

SimulationResult simulate_yield(std::span<const CodeResult> blocks, double q, uint64_t trials,
                                uint64_t seed, int jobs) {
  if (trials < 1) throw std::invalid_argument("simulate_yield requires trials >= 1");
  check_probability(q);

  size_t nblocks = blocks.size();
  auto run_trial = [&](uint64_t trial, std::vector<uint64_t>& block_hits, uint64_t& chip_hits) {
    bool chip_ok = true;
    for (size_t b = 0; b < nblocks; ++b) {
      const CodeResult& block = blocks[b];
      const BinaryLut& coded = block.coded;
      bool block_ok = true;
      for (int r = 0; r < coded.rows && block_ok; ++r) {
        std::vector<uint8_t> stored = coded.row(r);
        uint64_t base = static_cast<uint64_t>(r) * coded.width;
        for (int c = 0; c < coded.width; ++c) {
          double u = rng::to_unit(rng::hash(seed, rng::kStreamFault, trial, b, base + c));
          if (u < q) stored[c] ^= 1;
        }
        CorrectionOutcome out = correct(stored, block.H);
        switch (out.tag) {
          case CorrectionOutcome::Tag::NoError: block_ok = stored == coded.row(r); break;
          case CorrectionOutcome::Tag::Corrected: block_ok = out.corrected_row == coded.row(r); break;
          case CorrectionOutcome::Tag::Uncorrectable: block_ok = false; break;
        }
      }
      if (block_ok) ++block_hits[b];
      chip_ok = chip_ok && block_ok;
    }
    if (chip_ok) ++chip_hits;
  };

  int workers = jobs < 1 ? 1 : jobs;
  std::vector<std::vector<uint64_t>> block_hits(workers, std::vector<uint64_t>(nblocks, 0));
  std::vector<uint64_t> chip_hits(workers, 0);

  if (workers == 1) {
    for (uint64_t trial = 0; trial < trials; ++trial)
      run_trial(trial, block_hits[0], chip_hits[0]);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      uint64_t lo = w * chunk;
      uint64_t hi = std::min(trials, lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        for (uint64_t trial = lo; trial < hi; ++trial)
          run_trial(trial, block_hits[w], chip_hits[w]);
      });
    }
    for (auto& th : pool) th.join();
  }

  uint64_t chip_total = 0;
  std::vector<uint64_t> block_total(nblocks, 0);
  for (int w = 0; w < workers; ++w) {
    chip_total += chip_hits[w];
    for (size_t b = 0; b < nblocks; ++b) block_total[b] += block_hits[w][b];
  }

  SimulationResult result;
  result.chip = make_estimate(chip_total, trials);
  for (size_t b = 0; b < nblocks; ++b) result.per_block.push_back(make_estimate(block_total[b], trials));
  return result;
}

}  // namespace lutcode

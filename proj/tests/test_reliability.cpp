#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lutcode/experiments.hpp"
#include "lutcode/hamming.hpp"
#include "lutcode/reliability.hpp"
#include "lutcode/rng.hpp"

using namespace lutcode;

namespace {

// Exact probability of at most `max_errors` flips among `w` bits, by
// enumerating all 2^w error patterns. Ground truth for chi.
double enumerate_at_most(int w, double q, int max_errors) {
  double total = 0.0;
  for (uint32_t mask = 0; mask < (1u << w); ++mask) {
    int flips = __builtin_popcount(mask);
    if (flips > max_errors) continue;
    total += std::pow(q, flips) * std::pow(1.0 - q, w - flips);
  }
  return total;
}

}  // namespace

TEST_CASE("psi") {
  CHECK(psi(2, 16, 0.01) == doctest::Approx(0.724980).epsilon(1e-6));
  CHECK(psi(5, 123, 0.0) == 1.0);
  CHECK(psi(1, 1, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(psi(0, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(psi(1, 1, 1.5), std::invalid_argument);
}

TEST_CASE("chi: both modes at width 6, q = 0.1") {
  // Enumeration gives the binomial form exactly.
  double expected = enumerate_at_most(6, 0.1, 1);
  CHECK(expected == doctest::Approx(0.885735).epsilon(1e-6));
  CHECK(chi(3, 3, 0.1, ChiMode::ExactBinomial) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(chi(3, 3, 0.1, ChiMode::ExactBinomial) == doctest::Approx(0.885735).epsilon(1e-6));
  CHECK(chi(3, 3, 0.1, ChiMode::PaperExact) == doctest::Approx(0.826686).epsilon(1e-6));
  // Same widths, different n/s split: only n + s matters.
  CHECK(chi(5, 1, 0.1, ChiMode::ExactBinomial) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("chi: edge cases and mode ordering") {
  CHECK(chi(4, 3, 0.0, ChiMode::ExactBinomial) == 1.0);
  CHECK(chi(4, 3, 0.0, ChiMode::PaperExact) == 1.0);
  CHECK(chi(1, 0, 0.3, ChiMode::ExactBinomial) == doctest::Approx(1.0));  // one bit always survives
  CHECK(chi(2, 1, 1.0, ChiMode::ExactBinomial) == doctest::Approx(0.0));

  // The two modes differ by exactly q (1-q)^(w-1).
  for (int w = 1; w <= 9; ++w) {
    for (double q : {0.001, 0.05, 0.3, 0.9}) {
      double diff = chi(w, 0, q, ChiMode::ExactBinomial) - chi(w, 0, q, ChiMode::PaperExact);
      CHECK(diff >= 0.0);
      CHECK(diff == doctest::Approx(q * std::pow(1 - q, w - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chi matches enumeration across widths") {
  for (int w = 1; w <= 10; ++w)
    for (double q : {0.001, 0.01, 0.2})
      CHECK(chi(w, 0, q, ChiMode::ExactBinomial) ==
            doctest::Approx(enumerate_at_most(w, q, 1)).epsilon(1e-10));
}

TEST_CASE("chip yield for one large corrected group") {
  ReliabilityProfile profile{{{4, 3, 1LL << 20}}, 1e-5};
  double corrected = chip_yield(profile, true, ChiMode::ExactBinomial);
  // Independent route: per-row survival by enumeration, then the power.
  double row = enumerate_at_most(7, 1e-5, 1);
  CHECK(corrected == doctest::Approx(std::pow(row, 1LL << 20)).epsilon(1e-9));
  CHECK(corrected == doctest::Approx(0.99780).epsilon(1e-4));

  double uncorrected = chip_yield(profile, false);
  CHECK(uncorrected < 1e-9);
  CHECK(uncorrected == doctest::Approx(psi(4, 1LL << 20, 1e-5)).epsilon(1e-12));
}

TEST_CASE("chip yield: empty profile and composition") {
  CHECK(chip_yield(ReliabilityProfile{{}, 0.5}, true) == 1.0);
  CHECK(chip_yield(ReliabilityProfile{{}, 0.5}, false) == 1.0);

  ReliabilityProfile both{{{3, 3, 100}, {4, 3, 50}}, 0.003};
  double split = chip_yield(ReliabilityProfile{{{3, 3, 100}}, 0.003}, true) *
                 chip_yield(ReliabilityProfile{{{4, 3, 50}}, 0.003}, true);
  CHECK(chip_yield(both, true) == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("correction at equal width never hurts") {
  for (double q : {1e-4, 0.01, 0.2})
    for (int n : {2, 4, 7}) {
      ReliabilityProfile profile{{{n, 0, 64}}, q};
      CHECK(chip_yield(profile, true, ChiMode::ExactBinomial) >=
            chip_yield(profile, false));
    }
}

TEST_CASE("chip yield is monotone in q, f, and n") {
  double qs[] = {1e-6, 1e-4, 1e-3, 0.01, 0.1, 0.5};
  for (size_t i = 0; i + 1 < std::size(qs); ++i) {
    ReliabilityProfile lo{{{3, 3, 1000}}, qs[i]};
    ReliabilityProfile hi{{{3, 3, 1000}}, qs[i + 1]};
    CHECK(chip_yield(lo, true) >= chip_yield(hi, true));
    CHECK(chip_yield(lo, false) >= chip_yield(hi, false));
  }
  for (long long f : {1LL, 10LL, 100LL}) {
    ReliabilityProfile lo{{{3, 3, f}}, 0.01};
    ReliabilityProfile hi{{{3, 3, 10 * f}}, 0.01};
    CHECK(chip_yield(lo, true) >= chip_yield(hi, true));
  }
  for (int n = 1; n < 8; ++n) {
    ReliabilityProfile lo{{{n, 3, 100}}, 0.01};
    ReliabilityProfile hi{{{n + 1, 3, 100}}, 0.01};
    CHECK(chip_yield(lo, true) >= chip_yield(hi, true));
  }
}

namespace {

CodeResult width5_block(uint64_t seed, int rows = 16) {
  TernaryLut lut = gen_random_lut(rows, 2, 0.5, 0.0, seed);
  return baseline_code(complete(lut, {}));  // delta(2) = 3, width 5
}

}  // namespace

TEST_CASE("simulation: degenerate probabilities") {
  std::vector<CodeResult> blocks = {width5_block(7)};
  SimulationResult sure = simulate_yield(blocks, 0.0, 500, 42);
  CHECK(sure.chip.estimate == 1.0);
  CHECK(sure.chip.successes == 500);

  SimulationResult doomed = simulate_yield(blocks, 1.0, 500, 42);
  CHECK(doomed.chip.estimate == 0.0);
}

TEST_CASE("simulation agrees with the analytic row model") {
  std::vector<CodeResult> blocks = {width5_block(11)};
  double q = 0.01;
  SimulationResult sim = simulate_yield(blocks, q, 40000, 2024);
  double analytic = std::pow(chi(2, 3, q, ChiMode::ExactBinomial), 16);
  CHECK(std::abs(sim.chip.estimate - analytic) <= 3.0 * sim.chip.std_error);
  REQUIRE(sim.per_block.size() == 1);
  CHECK(sim.per_block[0].successes == sim.chip.successes);
}

TEST_CASE("simulation is deterministic and thread-count independent") {
  std::vector<CodeResult> blocks = {width5_block(3), width5_block(4), width5_block(5)};
  SimulationResult a = simulate_yield(blocks, 0.02, 5000, 99, 1);
  SimulationResult b = simulate_yield(blocks, 0.02, 5000, 99, 8);
  SimulationResult c = simulate_yield(blocks, 0.02, 5000, 99, 3);
  CHECK(a.chip.successes == b.chip.successes);
  CHECK(a.chip.successes == c.chip.successes);
  for (size_t i = 0; i < blocks.size(); ++i) {
    CHECK(a.per_block[i].successes == b.per_block[i].successes);
    CHECK(a.per_block[i].successes == c.per_block[i].successes);
  }
  SimulationResult d = simulate_yield(blocks, 0.02, 5000, 100, 1);
  CHECK(a.chip.successes != d.chip.successes);  // different seed, different stream
}

TEST_CASE("chip success requires every block") {
  std::vector<CodeResult> blocks = {width5_block(21), width5_block(22)};
  SimulationResult sim = simulate_yield(blocks, 0.05, 3000, 7);
  CHECK(sim.chip.successes <= sim.per_block[0].successes);
  CHECK(sim.chip.successes <= sim.per_block[1].successes);
  double expected = std::pow(chi(2, 3, 0.05, ChiMode::ExactBinomial), 32);
  CHECK(std::abs(sim.chip.estimate - expected) <= 4.0 * sim.chip.std_error + 1e-9);
}

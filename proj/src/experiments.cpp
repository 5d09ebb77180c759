#include "lutcode/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "lutcode/hamming.hpp"
#include "lutcode/rng.hpp"

namespace lutcode {

TernaryLut gen_random_lut(int rows, int outputs, double p_one, double dc_fraction,
                          uint64_t seed) {
  if (rows < 1 || outputs < 1) throw std::invalid_argument("gen_random_lut requires counts >= 1");
  if (!(p_one >= 0.0 && p_one <= 1.0) || !(dc_fraction >= 0.0 && dc_fraction <= 1.0))
    throw std::invalid_argument("p_one and dc_fraction must be in [0,1]");

  TernaryLut lut;
  lut.rows = rows;
  lut.outputs = outputs;
  lut.cells.resize(static_cast<size_t>(rows) * outputs);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < outputs; ++c) {
      double u = rng::to_unit(rng::hash(seed, rng::kStreamCell, r, c));
      lut.set(r, c, u < p_one ? Trit::One : Trit::Zero);
    }

  long long total = static_cast<long long>(rows) * outputs;
  long long n_dc = static_cast<long long>(dc_fraction * static_cast<double>(total));
  if (n_dc > total) n_dc = total;
  // Partial Fisher-Yates over cell indices selects the DC set uniformly.
  std::vector<long long> idx(total);
  for (long long i = 0; i < total; ++i) idx[i] = i;
  for (long long i = 0; i < n_dc; ++i) {
    uint64_t h = rng::hash(seed, rng::kStreamDcPick, static_cast<uint64_t>(i));
    long long j = i + static_cast<long long>(rng::bounded(h, static_cast<uint64_t>(total - i)));
    std::swap(idx[i], idx[j]);
    lut.cells[idx[i]] = Trit::DontCare;
  }
  return lut;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (const auto& [key, value] : meta) out += "# " + key + ": " + value + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += (i + 1 == columns.size()) ? "\n" : ",";
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 == row.size()) ? "\n" : ",";
    }
  }
  return out;
}

std::string OutputTable::to_json() const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta) j["meta"][key] = value;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string OutputTable::render(const std::string& format) const {
  if (format == "csv") return to_csv();
  if (format == "json") return to_json();
  throw std::invalid_argument("unknown output format '" + format + "'");
}

void run_parallel(int jobs, long long count, const std::function<void(long long)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  int workers = static_cast<int>(std::min<long long>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

namespace {

struct ScenarioSpec {
  std::string label;
  double p_one;
  double dc_fraction;
};

const ScenarioSpec kScenarioSpecs[] = {
    {"symmetric", 0.5, 0.0},
    {"symmetric_dc", 0.5, 0.5},
    {"skewed", 0.2, 0.0},
    {"skewed_dc", 0.2, 0.5},
};

}  // namespace

Fig2Result run_fig2(const Fig2Config& config) {
  if (config.samples < 1) throw std::invalid_argument("fig2 requires samples >= 1");

  struct Task {
    int scenario;
    int sample;
  };
  std::vector<Fig2Scenario> scenarios;
  std::vector<Task> tasks;
  for (size_t sh = 0; sh < config.shapes.size(); ++sh) {
    auto [rows, outputs] = config.shapes[sh];
    for (size_t sc = 0; sc < std::size(kScenarioSpecs); ++sc) {
      const ScenarioSpec& spec = kScenarioSpecs[sc];
      Fig2Scenario s;
      s.name = std::to_string(rows) + "x" + std::to_string(outputs) + "_" + spec.label;
      s.rows = rows;
      s.outputs = outputs;
      s.p_one = spec.p_one;
      s.dc_fraction = spec.dc_fraction;
      s.k_histogram.assign(delta(outputs) + 1, 0);
      int index = static_cast<int>(scenarios.size());
      scenarios.push_back(std::move(s));
      for (int n = 0; n < config.samples; ++n) tasks.push_back({index, n});
    }
  }

  // Slot per task: k >= 0, or -1 for budget exhaustion.
  std::vector<int> outcome(tasks.size(), -2);
  SolveLimits limits{config.budget};
  run_parallel(config.jobs, static_cast<long long>(tasks.size()), [&](long long ti) {
    const Task& task = tasks[ti];
    const Fig2Scenario& s = scenarios[task.scenario];
    uint64_t lut_seed = rng::hash(config.seed, rng::kStreamBatch, task.scenario, task.sample);
    TernaryLut lut = gen_random_lut(s.rows, s.outputs, s.p_one, s.dc_fraction, lut_seed);
    try {
      CodeResult result = find_min_code(lut, limits);
      if (!verify_code(result).all_passed())
        throw std::logic_error("fig2 sample failed verification");
      outcome[ti] = result.k;
    } catch (const SearchBudgetExceeded&) {
      outcome[ti] = -1;
    }
  });

  for (size_t ti = 0; ti < tasks.size(); ++ti) {
    Fig2Scenario& s = scenarios[tasks[ti].scenario];
    int k = outcome[ti];
    if (k < 0) {
      ++s.budget_exceeded;
      continue;
    }
    ++s.k_histogram[k];
    double area = area_reduction(s.outputs, k);
    if (s.completed == 0) {
      s.min_area = s.max_area = area;
    } else {
      s.min_area = std::min(s.min_area, area);
      s.max_area = std::max(s.max_area, area);
    }
    s.mean_area += area;
    ++s.completed;
  }
  for (Fig2Scenario& s : scenarios)
    if (s.completed > 0) s.mean_area /= static_cast<double>(s.completed);

  return Fig2Result{config, std::move(scenarios)};
}

namespace {

std::vector<std::pair<std::string, std::string>> fig2_meta(const Fig2Config& config) {
  return {
      {"experiment", "fig2"},
      {"samples", std::to_string(config.samples)},
      {"seed", std::to_string(config.seed)},
      {"area_definition", "1 - (p + k) / (p + delta(p)), averaged per LUT"},
  };
}

}  // namespace

OutputTable Fig2Result::histogram_table() const {
  OutputTable t;
  t.meta = fig2_meta(config);
  t.columns = {"scenario", "rows", "outputs", "p_one", "dc_fraction", "k", "count", "fraction"};
  for (const Fig2Scenario& s : scenarios) {
    for (size_t k = 0; k < s.k_histogram.size(); ++k) {
      t.rows.push_back({s.name, std::to_string(s.rows), std::to_string(s.outputs),
                        format_double(s.p_one), format_double(s.dc_fraction), std::to_string(k),
                        std::to_string(s.k_histogram[k]),
                        format_double(static_cast<double>(s.k_histogram[k]) /
                                      static_cast<double>(config.samples))});
    }
  }
  return t;
}

OutputTable Fig2Result::area_table() const {
  OutputTable t;
  t.meta = fig2_meta(config);
  t.columns = {"scenario", "mean_area_reduction", "min", "max", "budget_exceeded"};
  for (const Fig2Scenario& s : scenarios) {
    t.rows.push_back({s.name, format_double(s.mean_area), format_double(s.min_area),
                      format_double(s.max_area), std::to_string(s.budget_exceeded)});
  }
  return t;
}

OutputTable run_yield_grid(const YieldGridConfig& config) {
  if (config.q_steps < 1 || config.blocks < 1 || config.rows_per_block < 1)
    throw std::invalid_argument("yield grid requires positive counts");

  long long blocks3 = config.blocks / 2;
  long long blocks4 = config.blocks - blocks3;
  long long f3 = blocks3 * config.rows_per_block;
  long long f4 = blocks4 * config.rows_per_block;

  OutputTable t;
  t.meta = {
      {"blocks", std::to_string(config.blocks)},
      {"rows_per_block", std::to_string(config.rows_per_block)},
      {"mix", "50/50 blocks of 3-output and 4-output rows, 3 parity columns each"},
      {"uncorrected_widths", "data bits only"},
  };
  t.columns = {"q", "yield_corrected_binomial", "yield_corrected_paper", "yield_uncorrected"};

  std::vector<CodeResult> mc_blocks;
  if (config.mc_trials > 0) {
    t.meta.emplace_back("mc_trials", std::to_string(config.mc_trials));
    t.meta.emplace_back("mc_blocks", std::to_string(config.mc_blocks));
    t.columns.insert(t.columns.end(), {"mc_yield", "mc_stderr", "mc_analytic"});
    for (long long b = 0; b < config.mc_blocks; ++b) {
      int outputs = (b % 2 == 0) ? 3 : 4;
      TernaryLut lut = gen_random_lut(config.rows_per_block, outputs, 0.5, 0.0,
                                      rng::hash(config.seed, rng::kStreamBatch, 7, b));
      mc_blocks.push_back(baseline_code(complete(lut, {})));
    }
  }

  for (int step = 0; step < config.q_steps; ++step) {
    double q = config.q_steps == 1
                   ? config.q_min
                   : config.q_min + (config.q_max - config.q_min) * step / (config.q_steps - 1);
    ReliabilityProfile profile{{{3, 3, f3}, {4, 3, f4}}, q};
    std::vector<std::string> row = {
        format_double(q),
        format_double(chip_yield(profile, true, ChiMode::ExactBinomial)),
        format_double(chip_yield(profile, true, ChiMode::PaperExact)),
        format_double(chip_yield(profile, false)),
    };
    if (config.mc_trials > 0) {
      SimulationResult sim = simulate_yield(mc_blocks, q, config.mc_trials,
                                            rng::hash(config.seed, rng::kStreamBatch, 9, step),
                                            config.jobs);
      long long mc3 = (config.mc_blocks + 1) / 2;
      long long mc4 = config.mc_blocks - mc3;
      ReliabilityProfile scaled{{{3, 3, mc3 * config.rows_per_block},
                                 {4, 3, mc4 * config.rows_per_block}},
                                q};
      row.push_back(format_double(sim.chip.estimate));
      row.push_back(format_double(sim.chip.std_error));
      row.push_back(format_double(chip_yield(scaled, true, ChiMode::ExactBinomial)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

OutputTable run_fig5(const Fig5Config& config) {
  if (config.r_min < 1 || config.r_max < config.r_min)
    throw std::invalid_argument("fig5 requires 1 <= r_min <= r_max");

  OutputTable t;
  t.meta = {
      {"experiment", "fig5"},
      {"block_size", "rows per block; corrected rows store 2+3 bits, uncorrected store 2"},
      {"mode", config.mode == ChiMode::ExactBinomial ? "exact_binomial" : "paper_exact"},
  };
  t.columns = {"q", "R", "yield_corrected", "yield_uncorrected", "improvement"};
  for (double q : config.qs) {
    double row_ok = chi(2, 3, q, config.mode);
    for (int r = config.r_min; r <= config.r_max; r *= 2) {
      double corrected = row_ok <= 0.0 ? 0.0 : std::exp(r * std::log(row_ok));
      double uncorrected = psi(2, r, q);
      t.rows.push_back({format_double(q), std::to_string(r), format_double(corrected),
                        format_double(uncorrected), format_double(corrected - uncorrected)});
    }
  }
  return t;
}

}  // namespace lutcode

// Command-line front end: encode/verify lookup tables, export CNF, evaluate
// the analytic yield models, and run the batch experiments.
//
// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 solver budget
// exceeded, 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lutcode/cnf.hpp"
#include "lutcode/code_result_io.hpp"
#include "lutcode/code_search.hpp"
#include "lutcode/experiments.hpp"
#include "lutcode/hamming.hpp"
#include "lutcode/lut.hpp"
#include "lutcode/reliability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

struct GlobalOptions {
  uint64_t seed = 1;
  std::string mode = "exact_binomial";
  std::string out = "-";
  std::string format = "csv";
  int jobs = 1;
};

lutcode::ChiMode chi_mode(const GlobalOptions& g) {
  if (g.mode == "exact_binomial") return lutcode::ChiMode::ExactBinomial;
  if (g.mode == "paper_exact") return lutcode::ChiMode::PaperExact;
  throw CLI::ValidationError("--mode must be exact_binomial or paper_exact");
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lutcode::ParseError(0, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

// fig2 emits two tables; the second goes to <stem>_area<ext>.
std::string area_path(const std::string& path) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_area";
  return path.substr(0, dot) + "_area" + path.substr(dot);
}

// Experiment settings may come from a JSON config file; explicitly passed
// flags take precedence over file values.
nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw lutcode::ParseError(0, "cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw lutcode::ParseError(0, std::string("config file: ") + e.what());
  }
}

template <typename T>
void config_get(const nlohmann::json& cfg, const CLI::App* cmd, const std::string& flag,
                const char* key, T& value) {
  if (cfg.contains(key) && (cmd == nullptr || cmd->count(flag) == 0))
    value = cfg.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact single-error-correcting codes for lookup tables"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed (default 1)");
  app.add_option("--mode", g.mode, "Row-survival formula: exact_binomial | paper_exact")
      ->check(CLI::IsMember({"exact_binomial", "paper_exact"}));
  app.add_option("--out", g.out, "Output path, '-' for stdout (default)");
  app.add_option("--format", g.format, "Table format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads (default 1)")->check(CLI::PositiveNumber);

  // encode
  auto* encode = app.add_subcommand("encode", "Build a minimal-redundancy code for a truth table");
  std::string encode_input = "-";
  bool encode_baseline = false;
  int max_extra = -1;
  uint64_t budget = lutcode::SolveLimits{}.max_steps;
  encode->add_option("input", encode_input, "Truth-table file, '-' for stdin");
  encode->add_flag("--baseline", encode_baseline,
                   "Skip the search; use the canonical construction with delta(p) parity columns "
                   "(don't-cares are completed with 0)");
  encode->add_option("--max-extra", max_extra, "Cap the searched extra-column count");
  encode->add_option("--budget", budget, "Solver step budget per feasibility check");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimal-redundancy search (size-capped)");
  std::string oracle_input = "-";
  lutcode::OracleLimits oracle_limits;
  oracle->add_option("input", oracle_input, "Truth-table file, '-' for stdin");
  oracle->add_option("--max-free-bits", oracle_limits.max_free_bits,
                     "Refuse above this many don't-care plus extra bits (default 20)");
  oracle->add_option("--max-columns", oracle_limits.max_columns,
                     "Refuse above this total width (default 7)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a stored code file");
  std::string verify_input = "-";
  std::string verify_source;
  verify->add_option("input", verify_input, "Stored code file, '-' for stdin");
  verify->add_option("--source", verify_source, "Original truth table for fixed-cell checks");

  // export-cnf
  auto* export_cnf = app.add_subcommand("export-cnf", "Write the feasibility CNF as DIMACS");
  std::string cnf_input = "-";
  int cnf_extra = 0;
  export_cnf->add_option("input", cnf_input, "Truth-table file, '-' for stdin");
  export_cnf->add_option("--extra", cnf_extra, "Extra-column count to encode (default 0)")
      ->check(CLI::NonNegativeNumber);

  // yield
  auto* yield_cmd = app.add_subcommand("yield", "Analytic chip yield for a block profile");
  std::vector<std::string> yield_groups;
  std::vector<double> yield_qs;
  double yield_qmin = 0, yield_qmax = 0;
  int yield_qsteps = 0;
  yield_cmd->add_option("--group", yield_groups, "Row population as n:s:f (repeatable)")
      ->required();
  yield_cmd->add_option("--q", yield_qs, "Defect probability (repeatable)");
  yield_cmd->add_option("--qmin", yield_qmin, "Grid start");
  yield_cmd->add_option("--qmax", yield_qmax, "Grid end");
  yield_cmd->add_option("--qsteps", yield_qsteps, "Grid point count");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo fault injection on stored codes");
  std::vector<std::string> sim_files;
  uint64_t sim_trials = 100000;
  double sim_q = 0.01;
  simulate->add_option("files", sim_files, "Stored code files")->required();
  simulate->add_option("--trials", sim_trials, "Trial count (default 100000)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--q", sim_q, "Per-bit defect probability (default 0.01)");

  // fig2
  auto* fig2 = app.add_subcommand("fig2", "Redundancy-reduction histogram over random LUTs");
  lutcode::Fig2Config fig2_cfg;
  int fig2_rows = 0, fig2_outputs = 0;
  std::string config_path;
  fig2->add_option("--samples", fig2_cfg.samples, "LUTs per scenario (default 500)")
      ->check(CLI::PositiveNumber);
  fig2->add_option("--rows", fig2_rows, "Single shape: row count");
  fig2->add_option("--outputs", fig2_outputs, "Single shape: output count");
  fig2->add_option("--budget", fig2_cfg.budget, "Solver step budget per feasibility check");
  fig2->add_option("--config", config_path, "JSON config file (flags take precedence)");

  // fig3 / fig4
  lutcode::YieldGridConfig grid_cfg;
  uint64_t grid_mc = 0;
  auto* fig3 = app.add_subcommand("fig3", "Chip yield vs defect probability, 1e-5..16e-5");
  auto* fig4 = app.add_subcommand("fig4", "Chip yield vs defect probability, 1e-8..25e-8");
  for (auto* cmd : {fig3, fig4}) {
    cmd->add_option("--qmin", grid_cfg.q_min, "Grid start");
    cmd->add_option("--qmax", grid_cfg.q_max, "Grid end");
    cmd->add_option("--qsteps", grid_cfg.q_steps, "Grid point count");
    cmd->add_option("--blocks", grid_cfg.blocks, "Block count (default 65536)");
    cmd->add_option("--rows-per-block", grid_cfg.rows_per_block, "Rows per block (default 16)");
    cmd->add_option("--mc", grid_mc, "Add Monte Carlo columns with this many trials");
    cmd->add_option("--mc-blocks", grid_cfg.mc_blocks,
                    "Scaled-down block count for Monte Carlo (default 32)");
    cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");
  }

  // fig5
  auto* fig5 = app.add_subcommand("fig5", "Block yield vs rows per block for 2-output LUTs");
  lutcode::Fig5Config fig5_cfg;
  fig5->add_option("--q", fig5_cfg.qs, "Defect probability (repeatable; default 0.01 0.001)");
  fig5->add_option("--rmin", fig5_cfg.r_min, "Smallest block size (default 2)");
  fig5->add_option("--rmax", fig5_cfg.r_max, "Largest block size (default 2048)");
  fig5->add_option("--config", config_path, "JSON config file (flags take precedence)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (encode->parsed()) {
      lutcode::TernaryLut lut = lutcode::parse_truth_table(read_input(encode_input));
      lutcode::CodeResult result;
      if (encode_baseline) {
        std::vector<uint8_t> zeros(lut.dc_count(), 0);
        result = lutcode::baseline_code(lutcode::complete(lut, zeros));
        result.source = lut;
        result.dc_assignment = zeros;
      } else {
        int cap = max_extra < 0 ? lutcode::delta(lut.outputs) : max_extra;
        auto found = lutcode::find_min_code_capped(lut, cap, lutcode::SolveLimits{budget});
        if (!found) {
          std::cerr << "no feasible code with at most " << cap << " extra columns\n";
          return kExitVerify;
        }
        result = *found;
      }
      write_output(g.out, lutcode::write_code_result(result));
      std::cerr << "k = " << result.k << ", width " << result.coded.width << ", area reduction "
                << lutcode::format_double(100.0 * lutcode::area_reduction(result)) << "%\n";
      return kExitOk;
    }

    if (oracle->parsed()) {
      lutcode::TernaryLut lut = lutcode::parse_truth_table(read_input(oracle_input));
      lutcode::CodeResult result = lutcode::brute_force_min_code(lut, oracle_limits);
      write_output(g.out, lutcode::write_code_result(result));
      std::cerr << "k = " << result.k << " (exhaustive minimum)\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      lutcode::StoredCode stored = lutcode::read_code_result(read_input(verify_input));
      std::optional<lutcode::TernaryLut> source;
      if (!verify_source.empty())
        source = lutcode::parse_truth_table(read_input(verify_source));
      lutcode::StoredCodeReport report = lutcode::verify_stored_code(stored, source);
      for (const auto& [name, ok] : report.checks)
        std::cerr << (ok ? "pass" : "FAIL") << "  " << name << "\n";
      if (!report.all_passed()) {
        std::cerr << "verification failed: " << report.detail << "\n";
        return kExitVerify;
      }
      return kExitOk;
    }

    if (export_cnf->parsed()) {
      lutcode::TernaryLut lut = lutcode::parse_truth_table(read_input(cnf_input));
      write_output(g.out, lutcode::to_dimacs(lutcode::build_feasibility_cnf(lut, cnf_extra)));
      return kExitOk;
    }

    if (yield_cmd->parsed()) {
      lutcode::ReliabilityProfile profile;
      for (const std::string& spec : yield_groups) {
        lutcode::ProfileGroup group;
        if (std::sscanf(spec.c_str(), "%d:%d:%lld", &group.n, &group.s, &group.f) != 3)
          throw CLI::ValidationError("--group expects n:s:f");
        profile.groups.push_back(group);
      }
      std::vector<double> qs = yield_qs;
      if (yield_qsteps > 0)
        for (int i = 0; i < yield_qsteps; ++i)
          qs.push_back(yield_qsteps == 1 ? yield_qmin
                                         : yield_qmin + (yield_qmax - yield_qmin) * i /
                                               (yield_qsteps - 1));
      if (qs.empty()) throw CLI::ValidationError("provide --q or --qmin/--qmax/--qsteps");

      lutcode::OutputTable t;
      t.columns = {"q", "yield_corrected", "yield_uncorrected"};
      for (double q : qs) {
        profile.q = q;
        t.rows.push_back({lutcode::format_double(q),
                          lutcode::format_double(lutcode::chip_yield(profile, true, chi_mode(g))),
                          lutcode::format_double(lutcode::chip_yield(profile, false))});
      }
      write_output(g.out, t.render(g.format));
      return kExitOk;
    }

    if (simulate->parsed()) {
      std::vector<lutcode::CodeResult> blocks;
      for (const std::string& path : sim_files) {
        lutcode::StoredCode stored = lutcode::read_code_result(read_input(path));
        lutcode::StoredCodeReport report = lutcode::verify_stored_code(stored);
        if (!report.all_passed()) {
          std::cerr << "stored code '" << path << "' failed verification: " << report.detail
                    << "\n";
          return kExitVerify;
        }
        lutcode::CodeResult block;
        block.k = stored.k;
        block.coded = stored.coded;
        block.H = stored.H;
        blocks.push_back(std::move(block));
      }
      lutcode::SimulationResult sim =
          lutcode::simulate_yield(blocks, sim_q, sim_trials, g.seed, g.jobs);
      lutcode::OutputTable t;
      t.meta = {{"q", lutcode::format_double(sim_q)},
                {"trials", std::to_string(sim_trials)},
                {"seed", std::to_string(g.seed)}};
      t.columns = {"block", "successes", "trials", "estimate", "std_error"};
      for (size_t b = 0; b < sim.per_block.size(); ++b) {
        const auto& e = sim.per_block[b];
        t.rows.push_back({std::to_string(b + 1), std::to_string(e.successes),
                          std::to_string(e.trials), lutcode::format_double(e.estimate),
                          lutcode::format_double(e.std_error)});
      }
      t.rows.push_back({"chip", std::to_string(sim.chip.successes),
                        std::to_string(sim.chip.trials), lutcode::format_double(sim.chip.estimate),
                        lutcode::format_double(sim.chip.std_error)});
      write_output(g.out, t.render(g.format));
      return kExitOk;
    }

    if (fig2->parsed()) {
      fig2_cfg.seed = g.seed;
      fig2_cfg.jobs = g.jobs;
      nlohmann::json cfg = load_config(config_path);
      config_get(cfg, fig2, "--samples", "samples", fig2_cfg.samples);
      config_get(cfg, fig2, "--rows", "rows", fig2_rows);
      config_get(cfg, fig2, "--outputs", "outputs", fig2_outputs);
      config_get(cfg, fig2, "--budget", "budget", fig2_cfg.budget);
      config_get(cfg, &app, "--seed", "seed", fig2_cfg.seed);
      config_get(cfg, &app, "--jobs", "jobs", fig2_cfg.jobs);
      if ((fig2_rows == 0) != (fig2_outputs == 0))
        throw CLI::ValidationError("--rows and --outputs must be given together");
      if (fig2_rows > 0) fig2_cfg.shapes = {{fig2_rows, fig2_outputs}};
      lutcode::Fig2Result result = lutcode::run_fig2(fig2_cfg);
      if (g.out == "-") {
        std::cout << result.histogram_table().render(g.format) << "\n"
                  << result.area_table().render(g.format);
      } else {
        write_output(g.out, result.histogram_table().render(g.format));
        write_output(area_path(g.out), result.area_table().render(g.format));
      }
      return kExitOk;
    }

    if (fig3->parsed() || fig4->parsed()) {
      CLI::App* cmd = fig3->parsed() ? fig3 : fig4;
      if (fig4->parsed()) {
        if (!fig4->count("--qmin")) grid_cfg.q_min = 1e-8;
        if (!fig4->count("--qmax")) grid_cfg.q_max = 25e-8;
        if (!fig4->count("--qsteps")) grid_cfg.q_steps = 25;
      }
      grid_cfg.mc_trials = grid_mc;
      grid_cfg.seed = g.seed;
      grid_cfg.jobs = g.jobs;
      nlohmann::json cfg = load_config(config_path);
      config_get(cfg, cmd, "--qmin", "qmin", grid_cfg.q_min);
      config_get(cfg, cmd, "--qmax", "qmax", grid_cfg.q_max);
      config_get(cfg, cmd, "--qsteps", "qsteps", grid_cfg.q_steps);
      config_get(cfg, cmd, "--blocks", "blocks", grid_cfg.blocks);
      config_get(cfg, cmd, "--rows-per-block", "rows_per_block", grid_cfg.rows_per_block);
      config_get(cfg, cmd, "--mc", "mc", grid_cfg.mc_trials);
      config_get(cfg, cmd, "--mc-blocks", "mc_blocks", grid_cfg.mc_blocks);
      config_get(cfg, &app, "--seed", "seed", grid_cfg.seed);
      config_get(cfg, &app, "--jobs", "jobs", grid_cfg.jobs);
      lutcode::OutputTable t = lutcode::run_yield_grid(grid_cfg);
      t.meta.insert(t.meta.begin(), {"experiment", fig3->parsed() ? "fig3" : "fig4"});
      write_output(g.out, t.render(g.format));
      return kExitOk;
    }

    if (fig5->parsed()) {
      fig5_cfg.mode = chi_mode(g);
      nlohmann::json cfg = load_config(config_path);
      config_get(cfg, fig5, "--q", "q", fig5_cfg.qs);
      config_get(cfg, fig5, "--rmin", "rmin", fig5_cfg.r_min);
      config_get(cfg, fig5, "--rmax", "rmax", fig5_cfg.r_max);
      write_output(g.out, lutcode::run_fig5(fig5_cfg).render(g.format));
      return kExitOk;
    }
  } catch (const lutcode::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const lutcode::SearchBudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const lutcode::BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

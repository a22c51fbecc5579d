#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pandora/distribution.hpp"
#include "pandora/engine.hpp"
#include "pandora/errors.hpp"
#include "pandora/instance_io.hpp"
#include "pandora/model.hpp"
#include "pandora/policies.hpp"
#include "pandora/registry.hpp"
#include "pandora/render.hpp"

namespace {

using pandora::Error;
using pandora::ErrorKind;
using pandora::Format;
using pandora::Instance;

void diagnostic(const std::string& error, const std::string& message) {
  nlohmann::ordered_json line;
  line["error"] = error;
  line["message"] = message;
  std::cerr << line.dump() << "\n";
}

void deliver(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out.good()) {
    throw Error(ErrorKind::Usage, "cannot write output file: " + output);
  }
  out << text;
  if (!out.good()) throw Error(ErrorKind::Usage, "write failed: " + output);
}

std::unique_ptr<pandora::Policy> make_policy(const std::string& name,
                                             const Instance& inst,
                                             std::optional<double> tau) {
  if (name == "weitzman") return std::make_unique<pandora::WeitzmanPolicy>(inst);
  if (name == "ski-rental") {
    return std::make_unique<pandora::SkiRentalPolicy>(inst, true);
  }
  if (name == "ski-rental-deterministic") {
    return std::make_unique<pandora::SkiRentalPolicy>(inst, false);
  }
  if (name == "threshold") {
    return std::make_unique<pandora::ThresholdPolicy>(inst, tau);
  }
  if (name == "open-all") return std::make_unique<pandora::OpenAllPolicy>(inst);
  if (name == "dp-optimal") return std::make_unique<pandora::DpPolicy>(inst);
  throw Error(ErrorKind::Usage, "unknown policy: " + name);
}

pandora::OracleKind parse_oracle(const std::string& name) {
  if (name == "prophet") return pandora::OracleKind::Prophet;
  if (name == "weak-prophet") return pandora::OracleKind::WeakProphet;
  if (name == "dp-optimal") return pandora::OracleKind::DpOptimal;
  throw Error(ErrorKind::Usage, "unknown oracle: " + name);
}

std::vector<std::int64_t> default_n_list(const std::string& family) {
  if (family == "tightness") return {10, 100, 1000, 10000, 100000, 1000000};
  if (family == "example41") return {4, 16, 64, 256};
  if (family == "example32") return {4, 100, 10000, 1000000};
  throw Error(ErrorKind::Usage, "unknown family: " + family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "prophet-vs-gambler experiments: variant table, hard instance "
      "families, policies, oracles, and ratio sweeps"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::uint64_t seed = 12345;
  std::int64_t trials = 10000;
  std::string format_name = "pretty";
  std::string output;
  int threads = 4;
  app.add_option("--seed", seed, "root seed for all sampling");
  app.add_option("--trials", trials, "monte carlo trials per estimate");
  app.add_option("--format", format_name, "csv, json, or pretty");
  app.add_option("--output", output, "write to this file instead of stdout");
  app.add_option("--threads", threads,
                 "worker threads (never changes sampled numbers)");

  auto* table = app.add_subcommand(
      "table", "all 16 variant cells with desk-scale demo checks");
  std::int64_t table_n = 10000;
  table->add_option("--n", table_n, "instance size for the demo checks");

  auto* gen = app.add_subcommand("gen", "write a generated instance file");
  std::string gen_family_name;
  std::int64_t gen_n = 0;
  gen->add_option("--family", gen_family_name, "instance family")->required();
  gen->add_option("--n", gen_n, "number of boxes")->required();

  auto* run = app.add_subcommand(
      "run", "evaluate a policy against an oracle on an instance file");
  std::string run_instance;
  std::string run_policy;
  std::string run_oracle = "prophet";
  bool run_exact = false;
  double run_tau = 0.0;
  run->add_option("--instance", run_instance, "instance file path")
      ->required();
  run->add_option("--policy", run_policy,
                  "weitzman, ski-rental, ski-rental-deterministic, "
                  "threshold, open-all, or dp-optimal")
      ->required();
  run->add_option("--oracle", run_oracle,
                  "prophet, weak-prophet, or dp-optimal");
  run->add_flag("--exact", run_exact,
                "exact evaluation; refuses to fall back to sampling");
  auto* tau_opt = run->add_option("--tau", run_tau,
                                  "threshold policy cutoff override");

  auto* sweep = app.add_subcommand(
      "ratio-sweep", "closed-form and sampled ratios across instance sizes");
  std::string sweep_family;
  std::vector<std::int64_t> sweep_n_list;
  std::int64_t sweep_mc_max_n = 10000;
  sweep->add_option("--family", sweep_family,
                    "tightness, example41, or example32")
      ->required();
  sweep->add_option("--n-list", sweep_n_list, "comma separated sizes")
      ->delimiter(',');
  sweep->add_option("--mc-max-n", sweep_mc_max_n,
                    "largest n that still gets sampled");

  auto* solve = app.add_subcommand(
      "solve-reservation", "reservation value of one box of an instance");
  std::string solve_instance;
  std::size_t solve_box = 0;
  solve->add_option("--instance", solve_instance, "instance file path")
      ->required();
  solve->add_option("--box", solve_box, "box index (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnostic("Usage", e.what());
    return 2;
  }

  try {
    const Format format = pandora::parse_format(format_name);
    const pandora::RunMeta meta = pandora::make_run_meta(seed, trials);
    if (trials <= 0) {
      throw Error(ErrorKind::Usage, "--trials must be positive");
    }
    if (threads < 1) {
      throw Error(ErrorKind::Usage, "--threads must be at least 1");
    }

    if (table->parsed()) {
      const auto& cells = pandora::registry_cells();
      std::vector<pandora::CellCheck> checks;
      if (format != Format::Csv) {
        // csv is the stable registry view; checks cost monte carlo time
        checks.reserve(cells.size());
        for (const auto& cell : cells) {
          checks.push_back(
              pandora::run_cell_check(cell, table_n, trials, seed, threads));
        }
      } else {
        checks.resize(cells.size());
      }
      deliver(pandora::render_table(cells, checks, format, meta), output);
    } else if (gen->parsed()) {
      Instance inst = pandora::gen_family(gen_family_name, gen_n, seed);
      if (output.empty()) {
        std::cout << pandora::emit_instance(inst) << "\n";
      } else {
        pandora::write_instance_file(inst, output);
      }
    } else if (run->parsed()) {
      Instance inst = pandora::read_instance_file(run_instance);
      std::optional<double> tau;
      if (tau_opt->count() > 0) tau = run_tau;
      auto policy = make_policy(run_policy, inst, tau);
      pandora::OracleKind oracle = parse_oracle(run_oracle);
      pandora::RunReport report;
      report.policy = run_policy;
      report.oracle = run_oracle;
      report.exact = run_exact;
      if (run_exact) {
        report.alg = pandora::exact_eval(*policy, inst);
        report.oracle_value = pandora::exact_oracle_value(inst, oracle);
        report.ratio = report.alg / report.oracle_value;
      } else {
        pandora::McResult mc =
            pandora::monte_carlo(*policy, inst, oracle, trials, seed, threads);
        report.alg = mc.alg.mean;
        report.oracle_value = mc.oracle.mean;
        report.ratio = mc.ratio;
        report.has_ci = true;
        report.alg_hw = mc.alg.half_width;
        report.oracle_hw = mc.oracle.half_width;
        report.ratio_hw = mc.ratio_half_width;
        report.dominance_violations = mc.dominance_violations;
        report.pathwise_equal = mc.pathwise_equal;
      }
      deliver(pandora::render_run_report(report, format, meta), output);
    } else if (sweep->parsed()) {
      std::vector<std::int64_t> n_list =
          sweep_n_list.empty() ? default_n_list(sweep_family) : sweep_n_list;
      std::vector<pandora::RatioRow> rows = pandora::ratio_report(
          sweep_family, n_list, trials, seed, threads, sweep_mc_max_n);
      deliver(pandora::render_ratio_rows(rows, format, meta), output);
    } else if (solve->parsed()) {
      Instance inst = pandora::read_instance_file(solve_instance);
      if (solve_box >= inst.n()) {
        throw Error(ErrorKind::Usage,
                    "box index out of range: " + std::to_string(solve_box));
      }
      pandora::ReservationValue rv = pandora::reservation_value(
          inst.boxes[solve_box].dist, inst.boxes[solve_box].cost);
      deliver(pandora::render_reservation(rv, format), output);
    }
  } catch (const Error& err) {
    diagnostic(err.kind_name(), err.what());
    return err.exit_code();
  } catch (const std::exception& e) {
    diagnostic("Internal", e.what());
    return 1;
  }
  return 0;
}

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fraisse/cli.hpp"

// Exit codes: 0 success, 1 a gate or check reported failure, 2 error record.

namespace {

using fraisse::cli::ConfigError;
using fraisse::cli::ExperimentConfig;

struct Flags {
  std::string config_file;
  std::string M, N, h, a, b;
  bool serial = false;
};

void add_process_flags(CLI::App* cmd, ExperimentConfig& c, Flags& f) {
  cmd->add_option("--structure", c.structure, "pure-set, random-graph, rational-order, atomless-boolean, file:PATH");
  cmd->add_option("--stages", c.stages, "number of stages T");
  cmd->add_option("--seed", c.seed, "seed (required)");
  cmd->add_option("--M", f.M, "comma-separated M_i schedule (default 2^i)");
  cmd->add_option("--N", f.N, "comma-separated N_i schedule (default from the bad-event bound)");
}

int emit_error(const std::string& kind, const std::string& message) {
  std::cout << fraisse::cli::error_record(kind, message).dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraisse: random automorphism processes, amalgamation checks and conjugacy tables"};
  app.require_subcommand(1);
  ExperimentConfig c;
  Flags f;
  app.add_option("--config", f.config_file, "JSON config; its keys override flags");
  app.add_option("--out", c.out_dir, "directory for report, trace and CSV files");
  app.add_flag("--serial", f.serial, "use the serial kernels");

  auto* sample = app.add_subcommand("sample", "run the staged process once and emit its trace");
  add_process_flags(sample, c, f);

  auto* analyze = app.add_subcommand("analyze", "per-stage components, bad events, orbitals, witnesses");
  add_process_flags(analyze, c, f);
  analyze->add_option("--perm", f.h, "finite permutation h as a:b pairs");
  analyze->add_option("--tracked-entry", c.tracked_entry, "orbit schedule entry to count");
  analyze->add_option("--witness-a", f.a, "random-graph witness: points to be adjacent to");
  analyze->add_option("--witness-b", f.b, "random-graph witness: points to avoid");
  analyze->add_option("--witness-bound", c.witness_bound, "largest index searched");

  auto* check = app.add_subcommand("check", "bounded amalgamation checks");
  check->add_option("--class", c.check_class, "graphs, linear-orders, pure-sets, boolean, integer-distance, file:PATH");
  check->add_option("--property", c.property, "sap, ap, csap or schmerl");
  check->add_option("--size", c.size, "largest |B|,|C|,|D| (elements for boolean)");
  check->add_option("--bound", c.bound, "extra amalgam points; atoms for boolean; window for integer-distance");
  check->add_option("--structure", c.structure, "structure for the schmerl cross-check");

  auto* zoo = app.add_subcommand("zoo", "conjugacy classes of finite groups");
  zoo->add_option("--group", c.group, "named group, e.g. z2_semidirect_z3pow:2 or sym:4*cyclic:3");
  zoo->add_option("--group-file", c.group_file, "fraisse-group v1 table file");
  zoo->add_option("--table", c.table, "emit the example table with truncation size n");
  zoo->add_option("--carrier", c.carrier, "check the semidirect proposition over (Z_m)^n, given as m:n");

  auto* stats = app.add_subcommand("stats", "Monte Carlo batch with statistical gates");
  add_process_flags(stats, c, f);
  stats->add_option("--runs", c.runs, "number of runs");
  stats->add_option("--gate", c.gates, "bad-events, stabilization, intersection (repeatable)")->take_all();
  stats->add_option("--h-points", c.h_points, "random h on {0..k-1} per run; 0 for identity");
  stats->add_option("--tracked-entry", c.tracked_entry, "orbit schedule entry for the intersection gate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!f.M.empty()) c.M = fraisse::cli::parse_list(f.M);
    if (!f.N.empty()) c.N = fraisse::cli::parse_list(f.N);
    if (!f.h.empty()) c.h = fraisse::cli::parse_pairs(f.h);
    if (!f.a.empty()) c.witness_a = fraisse::cli::parse_list(f.a);
    if (!f.b.empty()) c.witness_b = fraisse::cli::parse_list(f.b);
    c.parallel = !f.serial;
    if (!f.config_file.empty()) {
      std::ifstream in(f.config_file);
      if (!in) throw ConfigError("cannot open config " + f.config_file);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
      }
      c = fraisse::cli::from_json(j, c);
    }

    auto start = std::chrono::steady_clock::now();
    auto out = fraisse::cli::run_command(command, c);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (!c.out_dir.empty()) fraisse::cli::write_outputs(c.out_dir, command, out, elapsed.count());
    std::cout << out.report.dump(2) << "\n";
    bool failed = out.report.contains("pass") && out.report["pass"] == false;
    return failed ? 1 : 0;
  } catch (const ConfigError& e) {
    return emit_error("config", e.what());
  } catch (const std::exception& e) {
    return emit_error("runtime", e.what());
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fraisse::cli {

/// Bad flag or config value; reported as a "config" error record.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand reads. Serializes to JSON so a report can carry the
/// config that produced it; timings never enter this struct.
struct ExperimentConfig {
  std::string structure = "pure-set";
  unsigned stages = 12;
  /// Mandatory for sample, analyze and stats.
  std::optional<std::uint64_t> seed;
  /// Empty means M_i = 2^i.
  std::vector<std::uint64_t> M;
  /// Empty means N_i from the bad-event bound.
  std::vector<std::uint64_t> N;

  // stats
  std::uint64_t runs = 200;
  std::vector<std::string> gates{"bad-events", "stabilization", "intersection"};
  /// h is a fresh random permutation of {0..h_points-1} per run; 0 keeps h = id.
  std::uint64_t h_points = 4;
  bool parallel = true;

  // analyze
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h;
  std::vector<std::uint64_t> witness_a;
  std::vector<std::uint64_t> witness_b;
  std::uint64_t witness_bound = 10'000;
  std::size_t tracked_entry = 0;

  // check
  /// graphs, linear-orders, pure-sets, boolean, integer-distance or file:PATH.
  std::string check_class = "graphs";
  /// sap, ap, csap or schmerl (the last reads `structure`).
  std::string property = "sap";
  std::size_t size = 3;
  std::optional<std::size_t> bound;

  // zoo
  std::string group;
  std::string group_file;
  std::optional<std::size_t> table;
  std::string carrier;

  std::string out_dir;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Unknown keys are rejected so typos do not silently fall back to defaults.
ExperimentConfig from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Primary artifacts of a command. Only `report` is printed; the others are
/// written when an output directory is set.
struct CommandOutput {
  nlohmann::json report;
  std::string trace_jsonl;
  std::string csv;
  std::string csv_name;
};

CommandOutput cmd_sample(const ExperimentConfig& c);
CommandOutput cmd_analyze(const ExperimentConfig& c);
CommandOutput cmd_check(const ExperimentConfig& c);
CommandOutput cmd_zoo(const ExperimentConfig& c);
CommandOutput cmd_stats(const ExperimentConfig& c);

CommandOutput run_command(const std::string& name, const ExperimentConfig& c);

nlohmann::json error_record(const std::string& kind, const std::string& message);

/// Writes report.json plus the trace and CSV when present, and a timing sidecar
/// kept apart so the primary files stay byte-identical across reruns.
void write_outputs(const std::string& dir, const std::string& command, const CommandOutput& out,
                   double seconds);

/// "a:b,c:d" -> pairs; "1,2,3" -> values.
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(const std::string& text);
std::vector<std::uint64_t> parse_list(const std::string& text);

}  // namespace fraisse::cli

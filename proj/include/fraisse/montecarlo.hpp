#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/analysis.hpp"

namespace fraisse {

/// Per-stage measurements of one run. Path and cycle counts refer to p·h.
struct StageRow {
  unsigned stage = 0;
  std::uint64_t domain_size = 0;
  std::uint64_t paths = 0;
  std::uint64_t cycles = 0;
  std::uint64_t bad_events = 0;
  /// Bad events that completed an orbit (closed cycle or fixed point).
  std::uint64_t completing_bad_events = 0;
  /// Cycles of p·h that appeared during this stage, recounted from the map itself.
  std::uint64_t new_cycles = 0;
  /// Components of p meeting the tracked orbit; only set when tracking is on.
  std::optional<std::uint64_t> orbit_intersections;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::vector<StageRow> rows;
  /// Non-empty when the run aborted; rows hold the stages completed before that.
  std::string error;
  /// Tracker path counts disagreed with a fresh decomposition at some stage.
  bool tracker_mismatch = false;
};

struct RunConfig {
  std::string structure;
  ProcessParams params;
  /// Pairs of the finite permutation h composed on the right; empty means identity.
  std::vector<std::pair<Point, Point>> h;
  /// Draw h as a fresh random permutation of {0, ..., h_random_points-1} per run.
  std::uint64_t h_random_points = 0;
  /// Schedule entry whose orbit intersections are recorded at every stage.
  std::optional<std::size_t> tracked_entry;
};

/// One full run with the given seed (overrides params.seed).
RunSummary run_one(const RunConfig& config, std::uint64_t seed);

/// Run r uses seed RandomSource::derive(master_seed, r); results are in run order.
std::vector<RunSummary> run_batch_serial(const RunConfig& config, std::uint64_t runs,
                                         std::uint64_t master_seed);
std::vector<RunSummary> run_batch_parallel(const RunConfig& config, std::uint64_t runs,
                                           std::uint64_t master_seed);

struct GateResult {
  bool pass = false;
  std::string detail;
};

/// Bad-event frequency at each stage in [first, last] against 2^-i + 3*sqrt(2^-i/runs).
GateResult bad_event_gate(const std::vector<RunSummary>& runs, unsigned first, unsigned last);

/// Completed-orbit count at stage `later` equals the count at `earlier` in at least
/// `fraction` of runs, and every stage with new cycles logged as many completing bad events.
GateResult stabilization_gate(const std::vector<RunSummary>& runs, unsigned earlier,
                              unsigned later, double fraction);

/// Median intersection count at stages 4n+2 is nondecreasing in n, and the count
/// grows from n=1 to n=3 in at least `fraction` of runs.
GateResult intersection_gate(const std::vector<RunSummary>& runs, unsigned max_n, double fraction);

}  // namespace fraisse

#include "fraisse/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fraisse/rng.hpp"

namespace fraisse {
namespace {

// Substream index for drawing h; far above any stage index.
constexpr std::uint64_t kPermutationStream = std::uint64_t{1} << 40;

PartialAutomorphism draw_permutation(std::uint64_t seed, std::uint64_t points) {
  auto rng = RandomSource::substream(seed, kPermutationStream);
  std::vector<std::uint64_t> image(points);
  std::iota(image.begin(), image.end(), 0);
  for (std::uint64_t k = points; k > 1; --k) std::swap(image[k - 1], image[rng.uniform(k)]);
  PartialAutomorphism h;
  for (std::uint64_t k = 0; k < points; ++k) h.add(Point{k}, Point{image[k]});
  return h;
}

double median(std::vector<std::uint64_t> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  auto n = values.size();
  return n % 2 ? static_cast<double>(values[n / 2])
               : (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

const StageRow* row_at(const RunSummary& run, unsigned stage) {
  for (const auto& r : run.rows)
    if (r.stage == stage) return &r;
  return nullptr;
}

}  // namespace

RunSummary run_one(const RunConfig& config, std::uint64_t seed) {
  RunSummary out;
  out.seed = seed;
  try {
    auto params = config.params;
    params.seed = seed;
    auto structure = make_structure(config.structure);
    Process process(structure, params);
    auto h_map = config.h_random_points ? draw_permutation(seed, config.h_random_points)
                                        : PartialAutomorphism::from_pairs(config.h);
    FinitePermutation h(h_map);

    PathTracker tracker;
    PartialAutomorphism composed;
    auto adjoin = [&](Point u, Point v) {
      auto effect = tracker.add(h.inverse(u), v);
      composed.add(h.inverse(u), v);
      return effect;
    };
    for (auto [u, v] : process.initial().pairs()) adjoin(u, v);
    std::uint64_t cycles_before = count_components(composed).cycles;

    std::optional<OrbitEntry> tracked;
    if (config.tracked_entry) tracked = process.schedule().entry(*config.tracked_entry);

    for (unsigned i = 1; i <= params.stages; ++i) {
      auto consumed = process.trace().size();
      process.run_stage();
      StageRow row;
      row.stage = i;
      for (auto k = consumed; k < process.trace().size(); ++k) {
        auto [u, v] = event_pair(process.trace()[k]);
        switch (adjoin(u, v)) {
          case PathTracker::Effect::Merged: ++row.bad_events; break;
          case PathTracker::Effect::ClosedCycle:
          case PathTracker::Effect::FixedPoint:
            ++row.bad_events;
            ++row.completing_bad_events;
            break;
          default: break;
        }
      }
      auto fresh = count_components(composed);
      row.domain_size = process.map().size();
      row.paths = tracker.paths();
      row.cycles = tracker.cycles();
      row.new_cycles = fresh.cycles - cycles_before;
      cycles_before = fresh.cycles;
      if (fresh.paths != tracker.paths() || fresh.cycles != tracker.cycles())
        out.tracker_mismatch = true;
      if (tracked) {
        row.orbit_intersections = orbit_intersection_count(*structure, decompose(process.map()),
                                                           tracked->fixed, tracked->representative);
      }
      out.rows.push_back(row);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<RunSummary> run_batch_serial(const RunConfig& config, std::uint64_t runs,
                                         std::uint64_t master_seed) {
  std::vector<RunSummary> out;
  out.reserve(runs);
  for (std::uint64_t r = 0; r < runs; ++r)
    out.push_back(run_one(config, RandomSource::derive(master_seed, r)));
  return out;
}

std::vector<RunSummary> run_batch_parallel(const RunConfig& config, std::uint64_t runs,
                                           std::uint64_t master_seed) {
  std::vector<RunSummary> out(runs);
  auto n = static_cast<std::int64_t>(runs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r)
    out[r] = run_one(config, RandomSource::derive(master_seed, static_cast<std::uint64_t>(r)));
  return out;
}

GateResult bad_event_gate(const std::vector<RunSummary>& runs, unsigned first, unsigned last) {
  GateResult g{true, {}};
  std::ostringstream detail;
  std::uint64_t usable = 0;
  std::string first_error;
  for (const auto& run : runs) {
    if (run.error.empty()) {
      ++usable;
    } else if (first_error.empty()) {
      first_error = run.error;
    }
  }
  if (usable != runs.size() || runs.empty()) {
    g.pass = false;
    detail << (runs.size() - usable) << "/" << runs.size() << " runs failed";
    if (!first_error.empty()) detail << " (" << first_error << ")";
    g.detail = detail.str();
    return g;
  }
  auto n = static_cast<double>(runs.size());
  for (unsigned i = first; i <= last; ++i) {
    std::uint64_t hits = 0;
    for (const auto& run : runs) {
      auto* row = row_at(run, i);
      if (row && row->bad_events > 0) ++hits;
    }
    double eps = std::ldexp(1.0, -static_cast<int>(i));
    double bound = eps + 3.0 * std::sqrt(eps / n);
    double freq = static_cast<double>(hits) / n;
    detail << "i=" << i << ":" << hits << "/" << runs.size() << (freq <= bound ? "" : "!") << " ";
    if (freq > bound) g.pass = false;
  }
  g.detail = detail.str();
  return g;
}

GateResult stabilization_gate(const std::vector<RunSummary>& runs, unsigned earlier,
                              unsigned later, double fraction) {
  GateResult g{true, {}};
  std::uint64_t stable = 0, unexplained = 0, usable = 0;
  for (const auto& run : runs) {
    if (!run.error.empty() || run.tracker_mismatch) continue;
    auto* a = row_at(run, earlier);
    auto* b = row_at(run, later);
    if (!a || !b) continue;
    ++usable;
    if (a->cycles == b->cycles) ++stable;
    for (const auto& row : run.rows)
      if (row.new_cycles > row.completing_bad_events) ++unexplained;
  }
  std::ostringstream detail;
  detail << "stable " << stable << "/" << usable << ", unexplained new orbits " << unexplained;
  if (usable != runs.size()) detail << ", unusable runs " << runs.size() - usable;
  g.pass = usable == runs.size() && !runs.empty() && unexplained == 0 &&
           static_cast<double>(stable) >= fraction * static_cast<double>(usable);
  g.detail = detail.str();
  return g;
}

GateResult intersection_gate(const std::vector<RunSummary>& runs, unsigned max_n, double fraction) {
  GateResult g{true, {}};
  std::ostringstream detail;
  std::vector<double> medians;
  for (unsigned n = 0; n <= max_n; ++n) {
    std::vector<std::uint64_t> counts;
    for (const auto& run : runs) {
      auto* row = row_at(run, 4 * n + 2);
      if (row && row->orbit_intersections) counts.push_back(*row->orbit_intersections);
    }
    if (counts.size() != runs.size() || runs.empty()) {
      g.pass = false;
      detail << "missing counts at stage " << 4 * n + 2 << "; ";
      continue;
    }
    medians.push_back(median(counts));
    detail << "median@" << 4 * n + 2 << "=" << medians.back() << " ";
  }
  for (std::size_t k = 1; k < medians.size(); ++k)
    if (medians[k] < medians[k - 1]) g.pass = false;
  std::uint64_t grew = 0;
  for (const auto& run : runs) {
    auto* a = row_at(run, 6);
    auto* b = row_at(run, 14);
    if (a && b && a->orbit_intersections && b->orbit_intersections &&
        *b->orbit_intersections >= *a->orbit_intersections + 1)
      ++grew;
  }
  detail << "grew " << grew << "/" << runs.size();
  if (static_cast<double>(grew) < fraction * static_cast<double>(runs.size())) g.pass = false;
  g.detail = detail.str();
  return g;
}

}  // namespace fraisse

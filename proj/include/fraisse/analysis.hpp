#pragma once

#include <string>
#include <vector>

#include "fraisse/process.hpp"

namespace fraisse {

/// Components of a finite partial permutation.
struct OrbitDecomposition {
  /// Completed finite orbits, each listed from its least point along the map.
  std::vector<std::vector<Point>> cycles;
  /// Partial paths (y, q(y), ..., q^n(y)) with y outside the range and q^n(y)
  /// outside the domain, ordered by starting point.
  std::vector<std::vector<Point>> paths;

  std::size_t fixed_points() const;
};

OrbitDecomposition decompose(const PartialAutomorphism& q);

struct ComponentCounts {
  std::uint64_t paths = 0;
  std::uint64_t cycles = 0;
};

/// Path and cycle counts in linear time without materializing components.
ComponentCounts count_components(const PartialAutomorphism& q);

enum class BadKind { PathsMerged, OrbitCompleted, FixedPoint };
std::string to_string(BadKind kind);

struct BadEventRecord {
  unsigned stage = 0;
  std::uint64_t substep = 0;
  BadKind kind = BadKind::PathsMerged;
  std::uint64_t paths_before = 0;
  std::uint64_t paths_after = 0;
};

/// Path and cycle counts of a growing partial permutation, maintained through
/// head/tail maps so that each added pair costs O(1).
class PathTracker {
 public:
  enum class Effect { NewPath, Extended, Merged, ClosedCycle, FixedPoint };

  /// Adds a -> b; a must be outside the domain and b outside the range.
  Effect add(Point a, Point b);

  std::uint64_t paths() const { return paths_; }
  std::uint64_t cycles() const { return cycles_; }

 private:
  PointMap end_of_start_;
  PointMap start_of_end_;
  PointHashSet domain_;
  PointHashSet range_;
  std::uint64_t paths_ = 0;
  std::uint64_t cycles_ = 0;
};

/// Finite permutation h (domain = range) extended by the identity.
class FinitePermutation {
 public:
  /// Throws std::invalid_argument when dom(h) != ran(h).
  explicit FinitePermutation(const PartialAutomorphism& h);
  static FinitePermutation identity() { return FinitePermutation(PartialAutomorphism{}); }
  Point inverse(Point x) const;

 private:
  PartialAutomorphism h_;
};

/// Replays a trace against p·h, where dom(p·h) = h^-1(dom p): adding x -> y to p
/// adds h^-1(x) -> y to the composition. An event is bad when the number of
/// partial paths drops or h^-1(x) = y.
std::vector<BadEventRecord> detect_bad_events(const PartialAutomorphism& initial,
                                              const std::vector<Event>& trace,
                                              const FinitePermutation& h);

/// Pair added to p by an event (preimage side on even stages).
std::pair<Point, Point> event_pair(const Event& e);

/// Components of p meeting the orbit of `representative` under the pointwise
/// stabilizer of F, among materialized points.
std::uint64_t orbit_intersection_count(const CountableStructure& s, const PartialAutomorphism& p,
                                       const PointSet& F, Point representative);
std::uint64_t orbit_intersection_count(const CountableStructure& s,
                                       const OrbitDecomposition& components,
                                       const PointSet& F, Point representative);

struct Orbital {
  Point lower;
  Point upper;
  /// +1 if points move up, -1 if down, 0 for a fixed point.
  int parity = 0;
  /// Built from at least one open path, so the true orbital may be larger.
  bool truncated = false;
  /// All merged components agreed on the parity.
  bool consistent = true;
  std::size_t components = 1;
};

/// Orbitals of a rational-order map, in increasing order; overlapping hulls are merged.
std::vector<Orbital> orbitals(const CountableStructure& s, const PartialAutomorphism& p);

struct AlternationViolation {
  std::size_t first;
  std::size_t second;
  /// Either orbital is truncated, so the violation may disappear in later stages.
  bool provisional;
};

/// Pairs of equal nonzero parity with no orbital of another parity in between.
std::vector<AlternationViolation> alternation_check(const std::vector<Orbital>& dec);

/// Least v <= bound adjacent to all of A, to none of B, and outside the
/// materialized orbits of A + B under p.
std::optional<Point> random_graph_witness(const PartialAutomorphism& p, const PointSet& A,
                                          const PointSet& B, std::uint64_t bound);

}  // namespace fraisse

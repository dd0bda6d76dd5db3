#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/point.hpp"
#include "fraisse/rng.hpp"

namespace fraisse {

enum class StructureKind {
  PureSet,
  RandomGraph,
  RationalOrder,
  AtomlessBoolean,
  IntegerDistance,
  UserRelational,
};

std::string to_string(StructureKind kind);

/// Generated-substructure closure exceeded its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested point lies beyond the representable part of the enumeration.
class RepresentationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kGeneratedCap = 65536;
inline constexpr std::uint64_t kDefaultAclBound = 64;

struct AclResult {
  PointSet points;
  /// True when produced by a per-structure exact rule.
  bool exact = false;
  std::optional<std::uint64_t> bound_used;
  /// Fallback only: points kept because the witness scan could not certify an infinite orbit.
  PointSet inconclusive;
};

enum class Verdict { Finite, Infinite, Unknown };

std::string to_string(Verdict v);

/// Lazy stream of points in increasing enumeration index, with a finiteness verdict.
class CandidateStream {
 public:
  virtual ~CandidateStream() = default;

  virtual Verdict verdict() const = 0;
  virtual std::optional<Point> next() = 0;

  /// Up to n further members.
  std::vector<Point> take(std::size_t n);
  /// All remaining members; only valid for a Finite verdict.
  std::vector<Point> take_all();
  /// Uniform choice among the first n members of the stream (from its start).
  /// The default materializes them; streams with random access override.
  virtual Point choose_among_first(std::uint64_t n, RandomSource& rng);
  /// Member k (0-based) of the stream, from its start; throws if absent.
  virtual Point member_at(std::uint64_t k);
};

/// Stream over an explicit sorted list.
class ListStream final : public CandidateStream {
 public:
  ListStream(std::vector<Point> points, Verdict verdict)
      : points_(std::move(points)), verdict_(verdict) {}
  Verdict verdict() const override { return verdict_; }
  std::optional<Point> next() override {
    if (pos_ >= points_.size()) return std::nullopt;
    return points_[pos_++];
  }

 private:
  std::vector<Point> points_;
  Verdict verdict_;
  std::size_t pos_ = 0;
};

/// Incrementally maintained view of a growing partial automorphism, used by the
/// staged process so that candidate queries do not rescan the whole map.
class ExtensionContext {
 public:
  virtual ~ExtensionContext() = default;
  virtual void add(Point from, Point to) = 0;
  /// Possible images of x (x outside the domain).
  virtual std::unique_ptr<CandidateStream> images(Point x) = 0;
  /// Possible preimages of y (y outside the range).
  virtual std::unique_ptr<CandidateStream> preimages(Point y) = 0;
  virtual const PartialAutomorphism& map() const = 0;
};

/// Incremental view of acl(base + adjoined points), used to audit orderings.
class ClosureTracker {
 public:
  virtual ~ClosureTracker() = default;
  virtual bool contains(Point x) const = 0;
  /// Replaces the closure C by acl(C + x).
  virtual void adjoin(Point x) = 0;
  virtual std::unique_ptr<ClosureTracker> clone() const = 0;
  virtual bool subset_of(const ClosureTracker& other) const = 0;
  virtual bool same_as(const ClosureTracker& other) const = 0;
  virtual std::size_t size() const = 0;
};

/// Lazily enumerated countable ultrahomogeneous structure.
///
/// Instances are immutable after construction; every operation is a pure
/// function of its arguments, so one instance can be shared across workers.
class CountableStructure {
 public:
  virtual ~CountableStructure() = default;

  virtual StructureKind kind() const = 0;
  virtual std::string name() const = 0;
  /// Human-readable form of a point (e.g. "3/4" for the rationals).
  virtual std::string describe(Point p) const { return std::to_string(p.index); }

  /// Closure of S under the function symbols (S itself for relational signatures).
  virtual PointSet generated(const PointSet& s) const { return s; }
  virtual bool is_partial_automorphism(const PartialAutomorphism& p) const = 0;
  /// b and b' realize the same type over S, i.e. id_<S> + (b -> b') is valid.
  virtual bool same_type_over(const PointSet& s, Point b, Point b2) const;

  /// Whether acl() follows an exact per-structure rule.
  virtual bool has_exact_acl() const = 0;
  /// Whether acl(S) = <S> for every S (no algebraicity beyond generation).
  virtual bool acl_is_generation() const { return false; }
  /// Whether acl(S) = S for every S.
  virtual bool has_trivial_acl() const { return false; }
  virtual AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const = 0;

  /// Possible images of x under valid extensions of p, increasing index.
  virtual std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                           Point x) const = 0;
  virtual std::unique_ptr<CandidateStream> possible_preimages(const PartialAutomorphism& p,
                                                              Point y) const {
    return possible_images(p.inverse(), y);
  }
  /// Orbit of x under the pointwise stabilizer of F.
  virtual std::unique_ptr<CandidateStream> stabilizer_orbit_stream(const PointSet& f,
                                                                   Point x) const;

  virtual PartialAutomorphism extend_with_fixed_point(const PartialAutomorphism& p) const;

  virtual std::unique_ptr<ExtensionContext> make_context(const PartialAutomorphism& p) const;

  /// Orders `fresh` so that each prefix closure acl(base + x_1..x_k) is
  /// inclusion-minimal, ties broken by least index. `base` must be acl-closed.
  virtual std::vector<Point> acl_minimal_order(const PointSet& base, const PointSet& fresh) const;

  /// Tracker starting from an acl-closed set.
  virtual std::unique_ptr<ClosureTracker> closure_tracker(const PointSet& closed) const;

  /// Upper bound on |acl(X + A)| given |X| <= size and |A| <= added, if known.
  virtual std::optional<std::uint64_t> closure_growth_bound(std::uint64_t size,
                                                            std::uint64_t added) const;
};

using StructurePtr = std::shared_ptr<const CountableStructure>;

/// Greedy inclusion-minimal ordering computed only through acl() calls.
std::vector<Point> generic_acl_minimal_order(const CountableStructure& s, const PointSet& base,
                                             const PointSet& fresh);

/// Context that recomputes candidates through possible_images/preimages.
class GenericContext : public ExtensionContext {
 public:
  GenericContext(const CountableStructure& s, PartialAutomorphism p)
      : structure_(s), map_(std::move(p)) {}
  void add(Point from, Point to) override { map_.add(from, to); }
  std::unique_ptr<CandidateStream> images(Point x) override {
    return structure_.possible_images(map_, x);
  }
  std::unique_ptr<CandidateStream> preimages(Point y) override {
    return structure_.possible_preimages(map_, y);
  }
  const PartialAutomorphism& map() const override { return map_; }

 private:
  const CountableStructure& structure_;
  PartialAutomorphism map_;
};

/// Built-in structures by CLI name: pure-set, random-graph, rational-order,
/// atomless-boolean, integer-distance.
StructurePtr make_structure(const std::string& name);
std::vector<std::string> builtin_structure_names();

}  // namespace fraisse

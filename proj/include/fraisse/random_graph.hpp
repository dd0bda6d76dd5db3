#pragma once

#include "fraisse/structure.hpp"

namespace fraisse {

/// Countable random graph on the naturals.
///
/// Adjacency of lo < hi is decided by hi: an odd hi = 2m+1 is adjacent to lo
/// iff bit lo of m is set (so odd vertices realize every finite pattern over
/// smaller vertices), an even hi by a fixed splitmix64 coin. Odd witnesses for
/// patterns over large vertices would need indices beyond 64 bits; the even
/// coins supply the witnesses that are actually reachable.
class RandomGraph final : public CountableStructure {
 public:
  /// Candidate scans give up after this many indices.
  static constexpr std::uint64_t kScanLimit = std::uint64_t{1} << 26;

  static bool adjacent(Point a, Point b);

  StructureKind kind() const override { return StructureKind::RandomGraph; }
  std::string name() const override { return "random-graph"; }

  bool is_partial_automorphism(const PartialAutomorphism& p) const override;

  bool has_exact_acl() const override { return true; }
  bool acl_is_generation() const override { return true; }
  bool has_trivial_acl() const override { return true; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;

  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;

  PartialAutomorphism extend_with_fixed_point(const PartialAutomorphism& p) const override;
  std::vector<Point> acl_minimal_order(const PointSet& base,
                                       const PointSet& fresh) const override;
  std::optional<std::uint64_t> closure_growth_bound(std::uint64_t size,
                                                    std::uint64_t added) const override {
    return size + added;
  }
};

/// Vertices whose adjacency to `anchors[k]` equals `pattern[k]` for all k,
/// skipping `excluded`, in increasing index order.
class AdjacencyPatternStream final : public CandidateStream {
 public:
  AdjacencyPatternStream(std::vector<Point> anchors, std::vector<bool> pattern,
                         std::vector<Point> excluded, std::uint64_t scan_limit);
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override;

 private:
  std::vector<Point> anchors_;
  std::vector<bool> pattern_;
  std::vector<Point> excluded_;
  std::uint64_t cursor_ = 0;
  std::uint64_t scan_limit_;
};

}  // namespace fraisse

#pragma once

#include <compare>

#include "fraisse/structure.hpp"

namespace fraisse {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// (Q, <) enumerated breadth-first along an infinite binary search tree.
///
/// Point index n is heap node h = n + 1. The root is 0, the left subtree holds
/// the negatives and the right subtree is the Stern-Brocot tree of the positive
/// rationals. Order is decided from the root paths alone: at the first differing
/// step a left turn is smaller; a descendant is smaller than its ancestor iff it
/// lies in the ancestor's left subtree. Nodes deeper than 63 are not representable.
class RationalOrder final : public CountableStructure {
 public:
  static std::strong_ordering compare(Point a, Point b);
  static bool less(Point a, Point b) { return compare(a, b) < 0; }
  static Fraction value(Point p);
  static unsigned depth(Point p);

  /// Number of depth-d nodes strictly less than u.
  static std::uint64_t count_below(Point u, unsigned depth);

  StructureKind kind() const override { return StructureKind::RationalOrder; }
  std::string name() const override { return "rational-order"; }
  std::string describe(Point p) const override;

  bool is_partial_automorphism(const PartialAutomorphism& p) const override;

  bool has_exact_acl() const override { return true; }
  bool acl_is_generation() const override { return true; }
  bool has_trivial_acl() const override { return true; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;

  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;

  PartialAutomorphism extend_with_fixed_point(const PartialAutomorphism& p) const override;
  std::unique_ptr<ExtensionContext> make_context(const PartialAutomorphism& p) const override;
  std::vector<Point> acl_minimal_order(const PointSet& base,
                                       const PointSet& fresh) const override;
  std::optional<std::uint64_t> closure_growth_bound(std::uint64_t size,
                                                    std::uint64_t added) const override {
    return size + added;
  }
};

/// Points strictly between two bounds (absent bound = unbounded), by index.
class IntervalStream final : public CandidateStream {
 public:
  IntervalStream(std::optional<Point> lower, std::optional<Point> upper);
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override;
  Point choose_among_first(std::uint64_t n, RandomSource& rng) override;
  Point member_at(std::uint64_t k) override { return nth(k); }
  /// k-th member (0-based) in index order.
  Point nth(std::uint64_t k) const;

 private:
  /// Half-open range of level positions inside the interval.
  std::pair<std::uint64_t, std::uint64_t> level_range(unsigned d) const;

  std::optional<Point> lower_;
  std::optional<Point> upper_;
  unsigned level_ = 0;
  std::uint64_t offset_ = 0;
};

}  // namespace fraisse

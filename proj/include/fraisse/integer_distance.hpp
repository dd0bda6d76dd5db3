#pragma once

#include "fraisse/structure.hpp"

namespace fraisse {

/// The integers with one binary relation per distance n (a R_n b iff |a-b| = n).
/// Automorphisms are the isometries x -> +-x + t, so any nonempty S has the
/// whole of Z as algebraic closure; acl() reports a bounded truncation.
/// Enumeration: 0, 1, -1, 2, -2, ...
class IntegerDistance final : public CountableStructure {
 public:
  static std::int64_t value(Point p);
  static Point point_of(std::int64_t z);
  static bool related(Point a, Point b, std::uint64_t distance);

  StructureKind kind() const override { return StructureKind::IntegerDistance; }
  std::string name() const override { return "integer-distance"; }
  std::string describe(Point p) const override { return std::to_string(value(p)); }

  bool is_partial_automorphism(const PartialAutomorphism& p) const override;

  bool has_exact_acl() const override { return false; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;

  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;
};

}  // namespace fraisse

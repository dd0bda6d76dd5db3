#pragma once

#include "fraisse/structure.hpp"

namespace fraisse {

/// Countable set with no relations; every injection is a partial automorphism.
class PureSet final : public CountableStructure {
 public:
  StructureKind kind() const override { return StructureKind::PureSet; }
  std::string name() const override { return "pure-set"; }

  bool is_partial_automorphism(const PartialAutomorphism&) const override { return true; }
  bool same_type_over(const PointSet& s, Point b, Point b2) const override;

  bool has_exact_acl() const override { return true; }
  bool acl_is_generation() const override { return true; }
  bool has_trivial_acl() const override { return true; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;

  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;
  std::unique_ptr<CandidateStream> possible_preimages(const PartialAutomorphism& p,
                                                      Point y) const override;

  PartialAutomorphism extend_with_fixed_point(const PartialAutomorphism& p) const override;
  std::unique_ptr<ExtensionContext> make_context(const PartialAutomorphism& p) const override;
  std::vector<Point> acl_minimal_order(const PointSet& base,
                                       const PointSet& fresh) const override;
  std::optional<std::uint64_t> closure_growth_bound(std::uint64_t size,
                                                    std::uint64_t added) const override {
    return size + added;
  }
};

}  // namespace fraisse

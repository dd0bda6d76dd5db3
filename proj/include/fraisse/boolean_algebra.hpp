#pragma once

#include "fraisse/structure.hpp"

namespace fraisse {

/// Clopen subsets of Cantor space, restricted to sets decided at depth <= 6.
///
/// An element is a 64-bit mask over the 64 depth-6 cells. Enumeration: index 0
/// and 1 are the empty set and the whole space; then, for depth d = 1..6, the
/// 2^d-bit truth tables that are not already decided at depth d-1, in numeric
/// order. Depth-d elements occupy indices [2^(2^(d-1)), 2^(2^d)), so the six
/// depths cover all of uint64. Elements needing depth 7 or more are not
/// representable and raise RepresentationLimit.
class AtomlessBoolean final : public CountableStructure {
 public:
  using Mask = std::uint64_t;
  static constexpr Mask kFull = ~Mask{0};
  static constexpr unsigned kMaxDepth = 6;
  /// Generated subalgebras are materialized up to this many atoms.
  static constexpr unsigned kMaxAtoms = 16;

  static Mask mask_of(Point p);
  static Point point_of(Mask m);
  static unsigned depth_of(Mask m);
  /// Atoms of the subalgebra generated by the given masks.
  static std::vector<Mask> atoms_of(const std::vector<Mask>& generators);
  /// All unions of the atoms, as sorted points.
  static PointSet algebra_from_atoms(const std::vector<Mask>& atoms);
  /// Block pairs of a map between generated subalgebras, or nullopt if the map
  /// does not extend to an isomorphism.
  static std::optional<std::vector<std::pair<Mask, Mask>>> block_pairs(
      const PartialAutomorphism& p);

  StructureKind kind() const override { return StructureKind::AtomlessBoolean; }
  std::string name() const override { return "atomless-boolean"; }
  std::string describe(Point p) const override;

  PointSet generated(const PointSet& s) const override;
  bool is_partial_automorphism(const PartialAutomorphism& p) const override;

  bool has_exact_acl() const override { return true; }
  bool acl_is_generation() const override { return true; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;

  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;

  PartialAutomorphism extend_with_fixed_point(const PartialAutomorphism& p) const override;
  std::unique_ptr<ExtensionContext> make_context(const PartialAutomorphism& p) const override;
  std::vector<Point> acl_minimal_order(const PointSet& base,
                                       const PointSet& fresh) const override;
  std::optional<std::uint64_t> closure_growth_bound(std::uint64_t size,
                                                    std::uint64_t added) const override;
  std::unique_ptr<ClosureTracker> closure_tracker(const PointSet& closed) const override;
};

}  // namespace fraisse

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <utility>
#include <vector>

namespace fraisse {

/// Position of an element in the fixed enumeration of a structure's domain.
struct Point {
  std::uint64_t index = 0;

  constexpr Point() = default;
  constexpr explicit Point(std::uint64_t i) : index(i) {}

  friend constexpr auto operator<=>(Point, Point) = default;
};

struct PointHash {
  std::size_t operator()(Point p) const noexcept {
    std::uint64_t z = p.index + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// Open-addressing containers keyed by points; iteration order is unspecified.
using PointMap = absl::flat_hash_map<Point, Point, PointHash>;
using PointHashSet = absl::flat_hash_set<Point, PointHash>;

/// Finite point set kept sorted by enumeration index, without duplicates.
using PointSet = std::vector<Point>;

PointSet make_point_set(std::vector<Point> points);
PointSet make_point_set(std::initializer_list<std::uint64_t> indices);
bool contains(const PointSet& set, Point p);
PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& a, const PointSet& b);
void insert_point(PointSet& set, Point p);

std::string to_string(const PointSet& set);

/// Finite injective point map. Validity with respect to a structure is
/// checked by the structure itself; this type only keeps the map injective.
class PartialAutomorphism {
 public:
  PartialAutomorphism() = default;

  static PartialAutomorphism identity(const PointSet& points);
  static PartialAutomorphism from_pairs(const std::vector<std::pair<Point, Point>>& pairs);

  /// Throws std::invalid_argument if the pair conflicts with an existing one.
  void add(Point from, Point to);
  /// Like add(), but returns false instead of throwing.
  bool try_add(Point from, Point to);

  std::optional<Point> image(Point x) const;
  std::optional<Point> preimage(Point y) const;
  bool in_domain(Point x) const { return forward_.contains(x); }
  bool in_range(Point y) const { return backward_.contains(y); }

  std::size_t size() const { return forward_.size(); }
  bool empty() const { return forward_.empty(); }

  PointSet domain() const;
  /// Unordered view of the pairs, for linear scans.
  const PointMap& forward_map() const { return forward_; }
  PointSet range() const;
  /// Pairs sorted by source index.
  std::vector<std::pair<Point, Point>> pairs() const;
  std::size_t fixed_point_count() const;

  PartialAutomorphism inverse() const;
  /// Applies the map to every point of `s`; throws if some point is outside the domain.
  PointSet apply(const PointSet& s) const;
  bool extends(const PartialAutomorphism& smaller) const;

  friend bool operator==(const PartialAutomorphism& a, const PartialAutomorphism& b) {
    return a.forward_ == b.forward_;
  }

 private:
  PointMap forward_;
  PointMap backward_;
};

}  // namespace fraisse

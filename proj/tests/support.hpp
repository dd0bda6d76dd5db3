#pragma once

#include <algorithm>
#include <array>

#include "fraisse/boolean_algebra.hpp"
#include "fraisse/process.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/structure.hpp"

namespace fraisse::testing {

/// Random valid map whose domain covers acl(S), built one point at a time through
/// an extension context starting from the identity on acl(empty).
inline PartialAutomorphism random_valid_map(const CountableStructure& s, const PointSet& S,
                                            RandomSource& rng, std::uint64_t window = 8) {
  auto base = s.acl({}).points;
  auto context = s.make_context(PartialAutomorphism::identity(base));
  auto target = s.acl(S).points;
  for (auto x : s.acl_minimal_order(base, set_difference(target, base))) {
    if (context->map().in_domain(x)) continue;
    auto images = context->images(x);
    Point y = images->verdict() == Verdict::Finite ? images->take_all().front()
                                                   : images->choose_among_first(window, rng);
    context->add(x, y);
  }
  return context->map();
}

/// Restriction to `points` of a random automorphism of the dyadic tree over the
/// depth-6 cells (cell j splits into 2j and 2j+1). It extends to every depth, so it
/// is a valid map of the atomless algebra, and unlike greedy extension it never
/// needs cells finer than the ones its arguments already use.
inline PartialAutomorphism random_tree_automorphism(const PointSet& points, RandomSource& rng) {
  using Mask = AtomlessBoolean::Mask;
  std::array<std::array<bool, 32>, 6> flip{};
  for (auto& level : flip)
    for (auto& f : level) f = rng.uniform(2) == 1;
  std::array<unsigned, 64> cell_image{};
  for (unsigned i = 0; i < 64; ++i) {
    unsigned out = 0;
    for (unsigned k = 0; k < 6; ++k) {
      unsigned bit = (i >> (5 - k)) & 1u;
      out = (out << 1) | (bit ^ static_cast<unsigned>(flip[k][i >> (6 - k)]));
    }
    cell_image[i] = out;
  }
  PartialAutomorphism g;
  for (auto p : points) {
    Mask m = AtomlessBoolean::mask_of(p), image = 0;
    for (unsigned i = 0; i < 64; ++i)
      if (m >> i & 1u) image |= Mask{1} << cell_image[i];
    g.add(p, AtomlessBoolean::point_of(image));
  }
  return g;
}

/// Random set of at most `size` points drawn from the first `range` indices.
inline PointSet random_points(RandomSource& rng, std::uint64_t size, std::uint64_t range) {
  PointSet out;
  auto count = rng.uniform(size + 1);
  for (std::uint64_t k = 0; k < count; ++k) insert_point(out, Point{rng.uniform(range)});
  return out;
}

}  // namespace fraisse::testing

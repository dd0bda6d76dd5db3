#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "fraisse/analysis.hpp"
#include "fraisse/random_graph.hpp"
#include "fraisse/rational_order.hpp"
#include "support.hpp"

using namespace fraisse;

namespace {

using Pairs = std::vector<std::pair<Point, Point>>;

Pairs pairs_of(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> list) {
  Pairs out;
  for (auto [a, b] : list) out.emplace_back(Point{a}, Point{b});
  return out;
}

// Oracle: follow the map from every point, no shared state with the tracker.
ComponentCounts brute_counts(const PartialAutomorphism& q) {
  ComponentCounts c;
  std::set<Point> seen;
  for (auto [a, b] : q.pairs()) {
    (void)b;
    if (seen.count(a)) continue;
    // Walk back to a start or around a cycle.
    Point start = a;
    bool cycle = false;
    while (auto pre = q.preimage(start)) {
      start = *pre;
      if (start == a) {
        cycle = true;
        break;
      }
    }
    Point y = start;
    seen.insert(y);
    while (auto img = q.image(y)) {
      y = *img;
      if (y == start) break;
      seen.insert(y);
    }
    ++(cycle ? c.cycles : c.paths);
  }
  return c;
}

PartialAutomorphism random_injection(RandomSource& rng, std::uint64_t universe, std::uint64_t size) {
  std::vector<std::uint64_t> src(universe), dst(universe);
  std::iota(src.begin(), src.end(), 0);
  std::iota(dst.begin(), dst.end(), 0);
  for (std::uint64_t k = universe; k > 1; --k) {
    std::swap(src[k - 1], src[rng.uniform(k)]);
    std::swap(dst[k - 1], dst[rng.uniform(k)]);
  }
  PartialAutomorphism q;
  for (std::uint64_t k = 0; k < size && k < universe; ++k) q.add(Point{src[k]}, Point{dst[k]});
  return q;
}

// First `count` rational points in increasing order.
std::vector<Point> sorted_rationals(std::uint64_t count) {
  std::vector<Point> pts;
  for (std::uint64_t k = 0; k < count; ++k) pts.push_back(Point{k});
  std::sort(pts.begin(), pts.end(), RationalOrder::less);
  return pts;
}

}  // namespace

TEST_CASE("decomposition of a small map") {
  auto q = PartialAutomorphism::from_pairs(pairs_of({{0, 1}, {1, 2}, {5, 5}, {7, 8}, {8, 7}, {3, 9}}));
  auto dec = decompose(q);
  CHECK(dec.paths == std::vector<std::vector<Point>>{{Point{0}, Point{1}, Point{2}}, {Point{3}, Point{9}}});
  CHECK(dec.cycles == std::vector<std::vector<Point>>{{Point{5}}, {Point{7}, Point{8}}});
  CHECK(dec.fixed_points() == 1);
  auto c = count_components(q);
  CHECK(c.paths == 2);
  CHECK(c.cycles == 2);
}

TEST_CASE("component counts agree with an independent walk") {
  RandomSource rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    auto universe = 1 + rng.uniform(30);
    auto q = random_injection(rng, universe, rng.uniform(universe + 1));
    auto fast = count_components(q);
    auto slow = brute_counts(q);
    auto dec = decompose(q);
    REQUIRE(fast.paths == slow.paths);
    REQUIRE(fast.cycles == slow.cycles);
    REQUIRE(dec.paths.size() == slow.paths);
    REQUIRE(dec.cycles.size() == slow.cycles);
    std::size_t covered = 0;
    for (const auto& p : dec.paths) covered += p.size();
    for (const auto& c : dec.cycles) covered += c.size();
    // Every point of dom + ran appears in exactly one component.
    REQUIRE(covered == set_union(q.domain(), q.range()).size());
  }
}

TEST_CASE("path tracker effects") {
  PathTracker t;
  CHECK(t.add(Point{0}, Point{1}) == PathTracker::Effect::NewPath);
  CHECK(t.add(Point{1}, Point{2}) == PathTracker::Effect::Extended);
  CHECK(t.add(Point{5}, Point{0}) == PathTracker::Effect::Extended);
  CHECK(t.add(Point{7}, Point{8}) == PathTracker::Effect::NewPath);
  CHECK(t.paths() == 2);
  CHECK(t.add(Point{2}, Point{7}) == PathTracker::Effect::Merged);
  CHECK(t.paths() == 1);
  CHECK(t.add(Point{8}, Point{5}) == PathTracker::Effect::ClosedCycle);
  CHECK(t.paths() == 0);
  CHECK(t.cycles() == 1);
  CHECK(t.add(Point{9}, Point{9}) == PathTracker::Effect::FixedPoint);
  CHECK(t.cycles() == 2);
  CHECK_THROWS_AS(t.add(Point{9}, Point{10}), std::invalid_argument);
  CHECK_THROWS_AS(t.add(Point{11}, Point{9}), std::invalid_argument);
}

TEST_CASE("path tracker matches a fresh count after every addition") {
  RandomSource rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto q = random_injection(rng, 25, 25);
    auto pairs = q.pairs();
    for (std::size_t k = pairs.size(); k > 1; --k) std::swap(pairs[k - 1], pairs[rng.uniform(k)]);
    PathTracker t;
    PartialAutomorphism grown;
    for (auto [a, b] : pairs) {
      auto before = brute_counts(grown);
      auto effect = t.add(a, b);
      grown.add(a, b);
      auto after = brute_counts(grown);
      REQUIRE(t.paths() == after.paths);
      REQUIRE(t.cycles() == after.cycles);
      bool completed = after.cycles > before.cycles;
      REQUIRE(completed == (effect == PathTracker::Effect::ClosedCycle ||
                            effect == PathTracker::Effect::FixedPoint));
      REQUIRE((effect == PathTracker::Effect::FixedPoint) == (a == b));
      REQUIRE((effect == PathTracker::Effect::Merged) == (after.paths < before.paths && !completed));
    }
  }
}

TEST_CASE("finite permutations") {
  auto h = FinitePermutation(PartialAutomorphism::from_pairs(pairs_of({{0, 1}, {1, 2}, {2, 0}})));
  CHECK(h.inverse(Point{1}) == Point{0});
  CHECK(h.inverse(Point{0}) == Point{2});
  CHECK(h.inverse(Point{40}) == Point{40});
  CHECK_THROWS_AS(FinitePermutation(PartialAutomorphism::from_pairs(pairs_of({{0, 1}}))),
                  std::invalid_argument);
}

TEST_CASE("event pairs follow the stage parity") {
  Event forth{1, 0, Point{3}, Point{8}};
  Event back{2, 0, Point{3}, Point{8}};
  CHECK(event_pair(forth) == std::pair{Point{3}, Point{8}});
  CHECK(event_pair(back) == std::pair{Point{8}, Point{3}});
}

TEST_CASE("bad events on the composition agree with recounting") {
  auto s = make_structure("pure-set");
  RandomSource rng(2);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto result = sample(s, ProcessParams::defaults(7, seed));
    auto hmap = random_injection(rng, 4, 4);
    FinitePermutation h(hmap);
    auto bad = detect_bad_events(result.initial, result.trace, h);

    PartialAutomorphism composed;
    for (auto [u, v] : result.initial.pairs()) composed.add(h.inverse(u), v);
    std::size_t next = 0;
    for (const auto& e : result.trace) {
      auto [u, v] = event_pair(e);
      auto before = brute_counts(composed);
      composed.add(h.inverse(u), v);
      auto after = brute_counts(composed);
      bool expected = after.paths < before.paths || h.inverse(u) == v;
      bool flagged = next < bad.size() && bad[next].stage == e.stage && bad[next].substep == e.substep;
      REQUIRE(expected == flagged);
      if (flagged) {
        CHECK(bad[next].paths_before == before.paths);
        CHECK(bad[next].paths_after == after.paths);
        CHECK((bad[next].kind == BadKind::FixedPoint) == (h.inverse(u) == v));
        ++next;
      }
    }
    CHECK(next == bad.size());
  }
  CHECK(to_string(BadKind::PathsMerged) == "paths-merged");
  CHECK(to_string(BadKind::OrbitCompleted) == "orbit-completed");
  CHECK(to_string(BadKind::FixedPoint) == "fixed-point");
}

TEST_CASE("orbit intersections on the pure set") {
  auto s = make_structure("pure-set");
  auto q = PartialAutomorphism::from_pairs(pairs_of({{0, 1}, {1, 2}, {4, 5}, {7, 7}}));
  // Over F = {} every point is in the orbit of 0.
  CHECK(orbit_intersection_count(*s, q, {}, Point{0}) == 3);
  // Over F = {1}, the path through 1 still meets the orbit at 0 and 2.
  CHECK(orbit_intersection_count(*s, q, make_point_set({1}), Point{0}) == 3);
  // Over F = {7}, the fixed point itself is excluded.
  CHECK(orbit_intersection_count(*s, q, make_point_set({7}), Point{0}) == 2);
}

TEST_CASE("orbitals and alternation on the rationals") {
  auto s = make_structure("rational-order");
  auto r = sorted_rationals(15);  // r[0] < r[1] < ... < r[14]
  // Up-moving path r0 -> r1 -> r2, fixed r4, down-moving path r8 -> r6, up path r10 -> r12.
  auto q = PartialAutomorphism::from_pairs({{r[0], r[1]}, {r[1], r[2]}, {r[4], r[4]},
                                            {r[8], r[6]}, {r[10], r[12]}});
  REQUIRE(s->is_partial_automorphism(q));
  auto dec = orbitals(*s, q);
  REQUIRE(dec.size() == 4);
  CHECK(dec[0].lower == r[0]);
  CHECK(dec[0].upper == r[2]);
  CHECK(dec[0].parity == 1);
  CHECK(dec[0].truncated);
  CHECK(dec[1].parity == 0);
  CHECK_FALSE(dec[1].truncated);
  CHECK(dec[2].parity == -1);
  CHECK(dec[3].parity == 1);
  for (const auto& o : dec) CHECK(o.consistent);
  CHECK(alternation_check(dec).empty());

  // Two adjacent up orbitals with nothing between them violate alternation.
  auto bad = PartialAutomorphism::from_pairs({{r[0], r[1]}, {r[3], r[5]}});
  auto dec2 = orbitals(*s, bad);
  REQUIRE(dec2.size() == 2);
  auto violations = alternation_check(dec2);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].first == 0);
  CHECK(violations[0].second == 1);
  CHECK(violations[0].provisional);

  // Overlapping hulls merge.
  auto overlap = PartialAutomorphism::from_pairs({{r[0], r[5]}, {r[2], r[7]}});
  auto merged = orbitals(*s, overlap);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].components == 2);
  CHECK(merged[0].lower == r[0]);
  CHECK(merged[0].upper == r[7]);

  CHECK_THROWS_AS(orbitals(*make_structure("pure-set"), q), std::invalid_argument);
}

TEST_CASE("orbitals of sampled maps are consistent") {
  auto s = make_structure("rational-order");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto result = sample(s, ProcessParams::defaults(8, seed));
    auto dec = orbitals(*s, result.final_map);
    for (std::size_t k = 0; k < dec.size(); ++k) {
      CHECK(dec[k].consistent);
      CHECK_FALSE(RationalOrder::less(dec[k].upper, dec[k].lower));
      if (k + 1 < dec.size()) CHECK(RationalOrder::less(dec[k].upper, dec[k + 1].lower));
    }
    for (const auto& v : alternation_check(dec)) CHECK(v.provisional);
  }
}

TEST_CASE("random graph witness") {
  auto p = PartialAutomorphism::from_pairs(pairs_of({{0, 3}, {3, 6}}));
  auto A = make_point_set({0});
  auto B = make_point_set({1});
  auto w = random_graph_witness(p, A, B, 1000);
  REQUIRE(w.has_value());
  CHECK(RandomGraph::adjacent(*w, Point{0}));
  CHECK_FALSE(RandomGraph::adjacent(*w, Point{1}));
  CHECK(*w != Point{3});
  CHECK(*w != Point{6});
  CHECK_THROWS_AS(random_graph_witness(p, A, A, 10), std::invalid_argument);

  // Oracle scan: the witness is the least admissible index.
  auto blocked = make_point_set({0, 1, 3, 6});
  for (std::uint64_t v = 0; v < w->index; ++v) {
    Point y{v};
    bool admissible = !contains(blocked, y) && RandomGraph::adjacent(y, Point{0}) &&
                      !RandomGraph::adjacent(y, Point{1});
    CHECK_FALSE(admissible);
  }
}

#include "fraisse/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "fraisse/random_graph.hpp"
#include "fraisse/rational_order.hpp"

namespace fraisse {

std::size_t OrbitDecomposition::fixed_points() const {
  return static_cast<std::size_t>(
      std::count_if(cycles.begin(), cycles.end(), [](const auto& c) { return c.size() == 1; }));
}

OrbitDecomposition decompose(const PartialAutomorphism& q) {
  OrbitDecomposition out;
  PointHashSet seen;
  for (auto y : q.domain()) {
    if (q.in_range(y)) continue;
    std::vector<Point> path{y};
    seen.insert(y);
    for (auto next = q.image(y); next; next = q.image(*next)) {
      path.push_back(*next);
      seen.insert(*next);
    }
    out.paths.push_back(std::move(path));
  }
  for (auto y : q.domain()) {
    if (seen.contains(y)) continue;
    std::vector<Point> cycle{y};
    seen.insert(y);
    for (auto next = *q.image(y); next != y; next = *q.image(next)) {
      cycle.push_back(next);
      seen.insert(next);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

ComponentCounts count_components(const PartialAutomorphism& q) {
  ComponentCounts out;
  std::uint64_t path_edges = 0;
  for (const auto& [x, y] : q.forward_map()) {
    if (q.in_range(x)) continue;
    ++out.paths;
    for (auto next = std::optional<Point>(x); (next = q.image(*next));) ++path_edges;
  }
  if (path_edges == q.size()) return out;
  // Some edges lie on cycles; mark path points and walk the rest.
  PointHashSet seen;
  for (const auto& [x, y] : q.forward_map()) {
    if (q.in_range(x)) continue;
    for (auto next = std::optional<Point>(x); next; next = q.image(*next)) seen.insert(*next);
  }
  for (const auto& [x, y] : q.forward_map()) {
    if (seen.contains(x)) continue;
    ++out.cycles;
    for (Point next = x; seen.insert(next).second;) next = *q.image(next);
  }
  return out;
}

std::string to_string(BadKind kind) {
  switch (kind) {
    case BadKind::PathsMerged: return "paths-merged";
    case BadKind::OrbitCompleted: return "orbit-completed";
    case BadKind::FixedPoint: return "fixed-point";
  }
  return "unknown";
}

PathTracker::Effect PathTracker::add(Point a, Point b) {
  if (domain_.contains(a) || range_.contains(b))
    throw std::invalid_argument("pair does not extend the partial permutation");
  domain_.insert(a);
  range_.insert(b);
  if (a == b) {
    ++cycles_;
    return Effect::FixedPoint;
  }
  auto tail = start_of_end_.find(a);   // a ends an existing path
  auto head = end_of_start_.find(b);   // b starts an existing path
  bool a_ends = tail != start_of_end_.end();
  bool b_starts = head != end_of_start_.end();
  if (!a_ends && !b_starts) {
    end_of_start_[a] = b;
    start_of_end_[b] = a;
    ++paths_;
    return Effect::NewPath;
  }
  if (a_ends && !b_starts) {
    Point start = tail->second;
    start_of_end_.erase(tail);
    end_of_start_[start] = b;
    start_of_end_[b] = start;
    return Effect::Extended;
  }
  if (!a_ends && b_starts) {
    Point end = head->second;
    end_of_start_.erase(head);
    end_of_start_[a] = end;
    start_of_end_[end] = a;
    return Effect::Extended;
  }
  Point start = tail->second;
  Point end = head->second;
  start_of_end_.erase(tail);
  end_of_start_.erase(head);
  --paths_;
  if (start == b) {
    ++cycles_;
    return Effect::ClosedCycle;
  }
  end_of_start_[start] = end;
  start_of_end_[end] = start;
  return Effect::Merged;
}

FinitePermutation::FinitePermutation(const PartialAutomorphism& h) : h_(h) {
  if (h.domain() != h.range())
    throw std::invalid_argument("h must permute a finite set (domain equal to range)");
}

Point FinitePermutation::inverse(Point x) const { return h_.preimage(x).value_or(x); }

std::pair<Point, Point> event_pair(const Event& e) {
  if (e.stage % 2 == 0) return {e.chosen, e.x};
  return {e.x, e.chosen};
}

std::vector<BadEventRecord> detect_bad_events(const PartialAutomorphism& initial,
                                              const std::vector<Event>& trace,
                                              const FinitePermutation& h) {
  PathTracker composed;
  for (auto [u, v] : initial.pairs()) composed.add(h.inverse(u), v);
  std::vector<BadEventRecord> out;
  for (const auto& e : trace) {
    auto [u, v] = event_pair(e);
    auto before = composed.paths();
    auto effect = composed.add(h.inverse(u), v);
    auto after = composed.paths();
    BadEventRecord r{e.stage, e.substep, BadKind::PathsMerged, before, after};
    switch (effect) {
      case PathTracker::Effect::Merged: out.push_back(r); break;
      case PathTracker::Effect::ClosedCycle:
        r.kind = BadKind::OrbitCompleted;
        out.push_back(r);
        break;
      case PathTracker::Effect::FixedPoint:
        r.kind = BadKind::FixedPoint;
        out.push_back(r);
        break;
      default: break;
    }
  }
  return out;
}

std::uint64_t orbit_intersection_count(const CountableStructure& s,
                                       const OrbitDecomposition& components, const PointSet& F,
                                       Point representative) {
  auto in_orbit = [&](Point y) {
    if (y == representative) return true;
    if (contains(F, y)) return false;
    return s.same_type_over(F, representative, y);
  };
  auto meets = [&](const std::vector<Point>& c) { return std::any_of(c.begin(), c.end(), in_orbit); };
  return static_cast<std::uint64_t>(
      std::count_if(components.paths.begin(), components.paths.end(), meets) +
      std::count_if(components.cycles.begin(), components.cycles.end(), meets));
}

std::uint64_t orbit_intersection_count(const CountableStructure& s, const PartialAutomorphism& p,
                                       const PointSet& F, Point representative) {
  return orbit_intersection_count(s, decompose(p), F, representative);
}

std::vector<Orbital> orbitals(const CountableStructure& s, const PartialAutomorphism& p) {
  if (s.kind() != StructureKind::RationalOrder)
    throw std::invalid_argument("orbitals are defined for the rational order only");
  auto dec = decompose(p);
  std::vector<Orbital> hulls;
  auto hull_of = [&](const std::vector<Point>& c, bool open) {
    Orbital o{c.front(), c.front(), 0, open, true, 1};
    for (auto y : c) {
      if (RationalOrder::less(y, o.lower)) o.lower = y;
      if (RationalOrder::less(o.upper, y)) o.upper = y;
    }
    // An order-preserving map moves a whole orbit one way; check every edge.
    std::size_t edges = open ? c.size() - 1 : (c.size() > 1 ? c.size() : 0);
    for (std::size_t k = 0; k < edges; ++k) {
      int sign = RationalOrder::less(c[k], c[(k + 1) % c.size()]) ? 1 : -1;
      if (o.parity == 0) {
        o.parity = sign;
      } else if (o.parity != sign) {
        o.consistent = false;
      }
    }
    return o;
  };
  for (const auto& c : dec.cycles) hulls.push_back(hull_of(c, false));
  for (const auto& c : dec.paths) hulls.push_back(hull_of(c, true));
  std::sort(hulls.begin(), hulls.end(),
            [](const Orbital& a, const Orbital& b) { return RationalOrder::less(a.lower, b.lower); });
  std::vector<Orbital> merged;
  for (const auto& h : hulls) {
    if (!merged.empty() && !RationalOrder::less(merged.back().upper, h.lower)) {
      auto& m = merged.back();
      if (RationalOrder::less(m.upper, h.upper)) m.upper = h.upper;
      if (m.parity != h.parity) m.consistent = false;
      m.consistent = m.consistent && h.consistent;
      m.truncated = true;
      m.components += h.components;
      continue;
    }
    merged.push_back(h);
  }
  return merged;
}

std::vector<AlternationViolation> alternation_check(const std::vector<Orbital>& dec) {
  std::vector<AlternationViolation> out;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    if (dec[i].parity == 0) continue;
    for (std::size_t j = i + 1; j < dec.size() && dec[j].parity == dec[i].parity; ++j) {
      out.push_back({i, j, dec[i].truncated || dec[j].truncated});
    }
  }
  return out;
}

std::optional<Point> random_graph_witness(const PartialAutomorphism& p, const PointSet& A,
                                          const PointSet& B, std::uint64_t bound) {
  if (!set_intersection(A, B).empty()) throw std::invalid_argument("A and B must be disjoint");
  auto anchors = set_union(A, B);
  PointHashSet excluded(anchors.begin(), anchors.end());
  auto dec = decompose(p);
  auto absorb = [&](const std::vector<Point>& c) {
    bool hit = std::any_of(c.begin(), c.end(), [&](Point y) { return contains(anchors, y); });
    if (hit) excluded.insert(c.begin(), c.end());
  };
  for (const auto& c : dec.paths) absorb(c);
  for (const auto& c : dec.cycles) absorb(c);
  for (std::uint64_t v = 0; v <= bound; ++v) {
    Point y{v};
    if (excluded.contains(y)) continue;
    bool ok = std::all_of(A.begin(), A.end(), [&](Point a) { return RandomGraph::adjacent(y, a); }) &&
              std::none_of(B.begin(), B.end(), [&](Point b) { return RandomGraph::adjacent(y, b); });
    if (ok) return y;
  }
  return std::nullopt;
}

}  // namespace fraisse

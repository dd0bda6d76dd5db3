#include "fraisse/random_graph.hpp"

#include <algorithm>

namespace fraisse {

bool RandomGraph::adjacent(Point a, Point b) {
  if (a == b) return false;
  auto lo = std::min(a.index, b.index);
  auto hi = std::max(a.index, b.index);
  if (hi % 2 == 1) {
    auto code = hi / 2;
    return lo < 64 && ((code >> lo) & 1u);
  }
  return RandomSource::splitmix64(RandomSource::splitmix64(hi) ^ lo) & 1u;
}

bool RandomGraph::is_partial_automorphism(const PartialAutomorphism& p) const {
  auto pairs = p.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (adjacent(pairs[i].first, pairs[j].first) != adjacent(pairs[i].second, pairs[j].second))
        return false;
    }
  }
  return true;
}

AclResult RandomGraph::acl(const PointSet& s, std::uint64_t) const {
  return AclResult{s, true, std::nullopt, {}};
}

AdjacencyPatternStream::AdjacencyPatternStream(std::vector<Point> anchors,
                                               std::vector<bool> pattern,
                                               std::vector<Point> excluded,
                                               std::uint64_t scan_limit)
    : anchors_(std::move(anchors)),
      pattern_(std::move(pattern)),
      excluded_(std::move(excluded)),
      scan_limit_(scan_limit) {
  std::sort(excluded_.begin(), excluded_.end());
}

std::optional<Point> AdjacencyPatternStream::next() {
  for (; cursor_ < scan_limit_; ++cursor_) {
    Point y{cursor_};
    if (std::binary_search(excluded_.begin(), excluded_.end(), y)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < anchors_.size() && ok; ++k) {
      ok = RandomGraph::adjacent(y, anchors_[k]) == pattern_[k];
    }
    if (ok) {
      ++cursor_;
      return y;
    }
  }
  throw RepresentationLimit("no vertex with the required adjacency pattern below index " +
                            std::to_string(scan_limit_));
}

std::unique_ptr<CandidateStream> RandomGraph::possible_images(const PartialAutomorphism& p,
                                                              Point x) const {
  std::vector<Point> anchors;
  std::vector<bool> pattern;
  for (auto [a, b] : p.pairs()) {
    anchors.push_back(b);
    pattern.push_back(adjacent(x, a));
  }
  return std::make_unique<AdjacencyPatternStream>(std::move(anchors), std::move(pattern),
                                                  p.range(), kScanLimit);
}

PartialAutomorphism RandomGraph::extend_with_fixed_point(const PartialAutomorphism& p) const {
  auto used = set_union(p.domain(), p.range());
  AdjacencyPatternStream common(used, std::vector<bool>(used.size(), true), used, kScanLimit);
  auto x = *common.next();
  auto out = p;
  out.add(x, x);
  return out;
}

std::vector<Point> RandomGraph::acl_minimal_order(const PointSet&, const PointSet& fresh) const {
  return fresh;
}

}  // namespace fraisse

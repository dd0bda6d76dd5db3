#include "fraisse/pure_set.hpp"

#include <algorithm>
#include <unordered_set>

namespace fraisse {
namespace {

using MemberSet = PointHashSet;

/// Smallest L such that [0, L) holds exactly n points outside `sorted`.
std::uint64_t complement_prefix_end(const std::vector<Point>& sorted, std::uint64_t n) {
  std::uint64_t end = n;
  for (auto e : sorted) {
    if (e.index >= end) break;
    ++end;
  }
  return end;
}

/// Increasing stream over the complement of a sorted finite set.
class SortedComplementStream final : public CandidateStream {
 public:
  explicit SortedComplementStream(std::vector<Point> excluded) : excluded_(std::move(excluded)) {}
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override {
    while (pos_ < excluded_.size() && excluded_[pos_].index < cursor_) ++pos_;
    while (pos_ < excluded_.size() && excluded_[pos_].index == cursor_) {
      ++cursor_;
      ++pos_;
    }
    return Point{cursor_++};
  }
  Point choose_among_first(std::uint64_t n, RandomSource& rng) override {
    auto end = complement_prefix_end(excluded_, n);
    for (;;) {
      Point u{rng.uniform(end)};
      if (!std::binary_search(excluded_.begin(), excluded_.end(), u)) return u;
    }
  }

 private:
  std::vector<Point> excluded_;
  std::size_t pos_ = 0;
  std::uint64_t cursor_ = 0;
};

/// Complement sampler over a growing hash set; caches the prefix end for one n.
class GrowingComplement {
 public:
  void insert(Point p) {
    members_.insert(p);
    if (cached_n_ == 0 || p.index >= end_) return;
    // One fewer free point below end_: absorb the next free point.
    while (members_.contains(Point{end_})) ++end_;
    ++end_;
  }
  bool contains(Point p) const { return members_.contains(p); }

  Point sample(std::uint64_t n, RandomSource& rng) {
    if (n != cached_n_) rebuild(n);
    for (;;) {
      Point u{rng.uniform(end_)};
      if (!members_.contains(u)) return u;
    }
  }

 private:
  void rebuild(std::uint64_t n) {
    std::vector<Point> sorted(members_.begin(), members_.end());
    std::sort(sorted.begin(), sorted.end());
    end_ = complement_prefix_end(sorted, n);
    cached_n_ = n;
  }

  MemberSet members_;
  std::uint64_t cached_n_ = 0;
  std::uint64_t end_ = 0;
};

class HashComplementStream final : public CandidateStream {
 public:
  explicit HashComplementStream(GrowingComplement& set) : set_(set) {}
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override {
    while (set_.contains(Point{cursor_})) ++cursor_;
    return Point{cursor_++};
  }
  Point choose_among_first(std::uint64_t n, RandomSource& rng) override {
    return set_.sample(n, rng);
  }

 private:
  GrowingComplement& set_;
  std::uint64_t cursor_ = 0;
};

class PureSetContext final : public ExtensionContext {
 public:
  explicit PureSetContext(PartialAutomorphism p) : map_(std::move(p)) {
    for (auto [a, b] : map_.pairs()) {
      dom_.insert(a);
      ran_.insert(b);
    }
  }
  void add(Point from, Point to) override {
    map_.add(from, to);
    dom_.insert(from);
    ran_.insert(to);
  }
  std::unique_ptr<CandidateStream> images(Point) override {
    return std::make_unique<HashComplementStream>(ran_);
  }
  std::unique_ptr<CandidateStream> preimages(Point) override {
    return std::make_unique<HashComplementStream>(dom_);
  }
  const PartialAutomorphism& map() const override { return map_; }

 private:
  PartialAutomorphism map_;
  GrowingComplement dom_;
  GrowingComplement ran_;
};

}  // namespace

bool PureSet::same_type_over(const PointSet& s, Point b, Point b2) const {
  if (contains(s, b) || contains(s, b2)) return b == b2;
  return true;
}

AclResult PureSet::acl(const PointSet& s, std::uint64_t) const {
  return AclResult{s, true, std::nullopt, {}};
}

std::unique_ptr<CandidateStream> PureSet::possible_images(const PartialAutomorphism& p,
                                                          Point) const {
  return std::make_unique<SortedComplementStream>(p.range());
}

std::unique_ptr<CandidateStream> PureSet::possible_preimages(const PartialAutomorphism& p,
                                                             Point) const {
  return std::make_unique<SortedComplementStream>(p.domain());
}

PartialAutomorphism PureSet::extend_with_fixed_point(const PartialAutomorphism& p) const {
  auto used = set_union(p.domain(), p.range());
  SortedComplementStream free(used);
  auto x = *free.next();
  auto out = p;
  out.add(x, x);
  return out;
}

std::unique_ptr<ExtensionContext> PureSet::make_context(const PartialAutomorphism& p) const {
  return std::make_unique<PureSetContext>(p);
}

std::vector<Point> PureSet::acl_minimal_order(const PointSet&, const PointSet& fresh) const {
  return fresh;
}

}  // namespace fraisse

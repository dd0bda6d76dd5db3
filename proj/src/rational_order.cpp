#include "fraisse/rational_order.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace fraisse {
namespace {

constexpr unsigned kMaxDepth = 63;

std::uint64_t heap_node(Point p) {
  if (p.index == UINT64_MAX) throw RepresentationLimit("rational index out of range");
  return p.index + 1;
}

Point from_heap(std::uint64_t h) { return Point{h - 1}; }

struct OrderLess {
  bool operator()(Point a, Point b) const { return RationalOrder::less(a, b); }
};

class RationalContext final : public ExtensionContext {
 public:
  explicit RationalContext(PartialAutomorphism p) : map_(std::move(p)) {
    for (auto [a, b] : map_.pairs()) {
      forward_.emplace(a, b);
      backward_.emplace(b, a);
    }
  }
  void add(Point from, Point to) override {
    map_.add(from, to);
    forward_.emplace(from, to);
    backward_.emplace(to, from);
  }
  std::unique_ptr<CandidateStream> images(Point x) override { return between(forward_, x); }
  std::unique_ptr<CandidateStream> preimages(Point y) override { return between(backward_, y); }
  const PartialAutomorphism& map() const override { return map_; }

 private:
  using OrderedMap = std::map<Point, Point, OrderLess>;

  static std::unique_ptr<CandidateStream> between(const OrderedMap& m, Point x) {
    std::optional<Point> lower, upper;
    auto it = m.lower_bound(x);
    if (it != m.end()) upper = it->second;
    if (it != m.begin()) lower = std::prev(it)->second;
    return std::make_unique<IntervalStream>(lower, upper);
  }

  PartialAutomorphism map_;
  OrderedMap forward_;
  OrderedMap backward_;
};

}  // namespace

unsigned RationalOrder::depth(Point p) {
  return static_cast<unsigned>(std::bit_width(heap_node(p)) - 1);
}

std::strong_ordering RationalOrder::compare(Point a, Point b) {
  auto ha = heap_node(a);
  auto hb = heap_node(b);
  auto da = depth(a);
  auto db = depth(b);
  auto common = std::min(da, db);
  auto pa = ha >> (da - common);
  auto pb = hb >> (db - common);
  if (pa != pb) return pa <=> pb;
  if (da == db) return std::strong_ordering::equal;
  if (da < db) {
    bool right = (hb >> (db - da - 1)) & 1u;
    return right ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  bool right = (ha >> (da - db - 1)) & 1u;
  return right ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::uint64_t RationalOrder::count_below(Point u, unsigned d) {
  auto du = depth(u);
  auto path = heap_node(u) - (std::uint64_t{1} << du);
  if (d <= du) {
    auto prefix = path >> (du - d);
    bool right_below = d < du && ((path >> (du - d - 1)) & 1u);
    return prefix + (right_below ? 1 : 0);
  }
  return (path << (d - du)) + (std::uint64_t{1} << (d - du - 1));
}

Fraction RationalOrder::value(Point p) {
  auto h = heap_node(p);
  auto d = depth(p);
  if (d == 0) return {0, 1};
  bool positive = (h >> (d - 1)) & 1u;
  std::int64_t ln = 0, ld = 1, rn = 1, rd = 0;
  std::int64_t mn = 1, md = 1;
  for (int bit = static_cast<int>(d) - 2; bit >= 0; --bit) {
    bool right = ((h >> bit) & 1u) == (positive ? 1u : 0u);
    if (right) {
      ln = mn;
      ld = md;
    } else {
      rn = mn;
      rd = md;
    }
    mn = ln + rn;
    md = ld + rd;
  }
  return positive ? Fraction{mn, md} : Fraction{-mn, md};
}

std::string RationalOrder::describe(Point p) const {
  auto f = value(p);
  if (f.den == 1) return std::to_string(f.num);
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

bool RationalOrder::is_partial_automorphism(const PartialAutomorphism& p) const {
  auto pairs = p.pairs();
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return less(x.first, y.first); });
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (!less(pairs[i - 1].second, pairs[i].second)) return false;
  }
  return true;
}

AclResult RationalOrder::acl(const PointSet& s, std::uint64_t) const {
  return AclResult{s, true, std::nullopt, {}};
}

std::unique_ptr<CandidateStream> RationalOrder::possible_images(const PartialAutomorphism& p,
                                                                Point x) const {
  std::optional<Point> below_src, above_src;
  for (auto a : p.domain()) {
    if (less(a, x)) {
      if (!below_src || less(*below_src, a)) below_src = a;
    } else if (!above_src || less(a, *above_src)) {
      above_src = a;
    }
  }
  std::optional<Point> lower, upper;
  if (below_src) lower = p.image(*below_src);
  if (above_src) upper = p.image(*above_src);
  return std::make_unique<IntervalStream>(lower, upper);
}

PartialAutomorphism RationalOrder::extend_with_fixed_point(const PartialAutomorphism& p) const {
  std::optional<Point> top;
  for (auto a : set_union(p.domain(), p.range())) {
    if (!top || less(*top, a)) top = a;
  }
  auto x = IntervalStream(top, std::nullopt).nth(0);
  auto out = p;
  out.add(x, x);
  return out;
}

std::unique_ptr<ExtensionContext> RationalOrder::make_context(const PartialAutomorphism& p) const {
  return std::make_unique<RationalContext>(p);
}

std::vector<Point> RationalOrder::acl_minimal_order(const PointSet&, const PointSet& fresh) const {
  return fresh;
}

IntervalStream::IntervalStream(std::optional<Point> lower, std::optional<Point> upper)
    : lower_(lower), upper_(upper) {
  if (lower_ && upper_ && !RationalOrder::less(*lower_, *upper_))
    throw std::invalid_argument("empty rational interval");
}

std::pair<std::uint64_t, std::uint64_t> IntervalStream::level_range(unsigned d) const {
  std::uint64_t lo = 0;
  std::uint64_t hi = std::uint64_t{1} << d;
  if (lower_) {
    lo = RationalOrder::count_below(*lower_, d) + (RationalOrder::depth(*lower_) == d ? 1 : 0);
  }
  if (upper_) hi = RationalOrder::count_below(*upper_, d);
  return {lo, std::max(lo, hi)};
}

std::optional<Point> IntervalStream::next() {
  while (level_ <= kMaxDepth) {
    auto [lo, hi] = level_range(level_);
    if (lo + offset_ < hi) {
      auto h = (std::uint64_t{1} << level_) + lo + offset_;
      ++offset_;
      return from_heap(h);
    }
    ++level_;
    offset_ = 0;
  }
  throw RepresentationLimit("rational interval exhausted at depth 63");
}

Point IntervalStream::nth(std::uint64_t k) const {
  for (unsigned d = 0; d <= kMaxDepth; ++d) {
    auto [lo, hi] = level_range(d);
    if (k < hi - lo) return from_heap((std::uint64_t{1} << d) + lo + k);
    k -= hi - lo;
  }
  throw RepresentationLimit("rational interval member beyond depth 63");
}

Point IntervalStream::choose_among_first(std::uint64_t n, RandomSource& rng) {
  nth(n - 1);
  return nth(rng.uniform(n));
}

}  // namespace fraisse

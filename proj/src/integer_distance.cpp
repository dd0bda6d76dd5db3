#include "fraisse/integer_distance.hpp"

#include <algorithm>

namespace fraisse {
namespace {

/// Every natural number, in order.
class AllPointsStream final : public CandidateStream {
 public:
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override { return Point{cursor_++}; }

 private:
  std::uint64_t cursor_ = 0;
};

std::uint64_t distance(std::int64_t a, std::int64_t b) {
  return a > b ? static_cast<std::uint64_t>(a - b) : static_cast<std::uint64_t>(b - a);
}

}  // namespace

std::int64_t IntegerDistance::value(Point p) {
  auto n = p.index;
  if (n % 2 == 1) return static_cast<std::int64_t>((n + 1) / 2);
  return -static_cast<std::int64_t>(n / 2);
}

Point IntegerDistance::point_of(std::int64_t z) {
  if (z > 0) return Point{2 * static_cast<std::uint64_t>(z) - 1};
  return Point{2 * static_cast<std::uint64_t>(-z)};
}

bool IntegerDistance::related(Point a, Point b, std::uint64_t n) {
  return distance(value(a), value(b)) == n;
}

bool IntegerDistance::is_partial_automorphism(const PartialAutomorphism& p) const {
  auto pairs = p.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (distance(value(pairs[i].first), value(pairs[j].first)) !=
          distance(value(pairs[i].second), value(pairs[j].second)))
        return false;
    }
  }
  return true;
}

AclResult IntegerDistance::acl(const PointSet& s, std::uint64_t bound) const {
  if (s.empty()) return AclResult{{}, true, std::nullopt, {}};
  // The stabilizer of one point is {id, reflection}: every orbit is finite.
  std::vector<Point> prefix;
  for (std::uint64_t i = 0; i < bound; ++i) prefix.push_back(Point{i});
  return AclResult{set_union(s, make_point_set(prefix)), false, bound, {}};
}

std::unique_ptr<CandidateStream> IntegerDistance::possible_images(const PartialAutomorphism& p,
                                                                  Point x) const {
  auto pairs = p.pairs();
  if (pairs.empty()) return std::make_unique<AllPointsStream>();
  auto [a, b] = pairs.front();
  auto offset = value(x) - value(a);
  std::vector<Point> out;
  for (int sign : {1, -1}) {
    auto y = point_of(value(b) + sign * offset);
    auto q = p;
    if (q.try_add(x, y) && is_partial_automorphism(q)) out.push_back(y);
  }
  out = make_point_set(out);
  return std::make_unique<ListStream>(std::move(out), Verdict::Finite);
}

}  // namespace fraisse

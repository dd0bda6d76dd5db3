#include "fraisse/point.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fraisse {

PointSet make_point_set(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet make_point_set(std::initializer_list<std::uint64_t> indices) {
  std::vector<Point> points;
  points.reserve(indices.size());
  for (auto i : indices) points.emplace_back(i);
  return make_point_set(std::move(points));
}

bool contains(const PointSet& set, Point p) {
  return std::binary_search(set.begin(), set.end(), p);
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void insert_point(PointSet& set, Point p) {
  auto it = std::lower_bound(set.begin(), set.end(), p);
  if (it == set.end() || *it != p) set.insert(it, p);
}

std::string to_string(const PointSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) os << ',';
    os << set[i].index;
  }
  os << '}';
  return os.str();
}

PartialAutomorphism PartialAutomorphism::identity(const PointSet& points) {
  PartialAutomorphism p;
  for (auto x : points) p.add(x, x);
  return p;
}

PartialAutomorphism PartialAutomorphism::from_pairs(
    const std::vector<std::pair<Point, Point>>& pairs) {
  PartialAutomorphism p;
  for (const auto& [x, y] : pairs) p.add(x, y);
  return p;
}

bool PartialAutomorphism::try_add(Point from, Point to) {
  auto f = forward_.find(from);
  if (f != forward_.end()) return f->second == to;
  if (backward_.contains(to)) return false;
  forward_.emplace(from, to);
  backward_.emplace(to, from);
  return true;
}

void PartialAutomorphism::add(Point from, Point to) {
  if (!try_add(from, to)) {
    throw std::invalid_argument("pair " + std::to_string(from.index) + "->" +
                                std::to_string(to.index) + " breaks injectivity");
  }
}

std::optional<Point> PartialAutomorphism::image(Point x) const {
  auto it = forward_.find(x);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<Point> PartialAutomorphism::preimage(Point y) const {
  auto it = backward_.find(y);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

PointSet PartialAutomorphism::domain() const {
  PointSet out;
  out.reserve(forward_.size());
  for (const auto& kv : forward_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

PointSet PartialAutomorphism::range() const {
  PointSet out;
  out.reserve(backward_.size());
  for (const auto& kv : backward_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Point, Point>> PartialAutomorphism::pairs() const {
  std::vector<std::pair<Point, Point>> out(forward_.begin(), forward_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t PartialAutomorphism::fixed_point_count() const {
  return static_cast<std::size_t>(std::count_if(
      forward_.begin(), forward_.end(), [](const auto& kv) { return kv.first == kv.second; }));
}

PartialAutomorphism PartialAutomorphism::inverse() const {
  PartialAutomorphism q;
  q.forward_ = backward_;
  q.backward_ = forward_;
  return q;
}

PointSet PartialAutomorphism::apply(const PointSet& s) const {
  std::vector<Point> out;
  out.reserve(s.size());
  for (auto x : s) {
    auto y = image(x);
    if (!y) throw std::out_of_range("point " + std::to_string(x.index) + " outside domain");
    out.push_back(*y);
  }
  return make_point_set(std::move(out));
}

bool PartialAutomorphism::extends(const PartialAutomorphism& smaller) const {
  for (const auto& [x, y] : smaller.forward_) {
    auto it = forward_.find(x);
    if (it == forward_.end() || it->second != y) return false;
  }
  return true;
}

}  // namespace fraisse

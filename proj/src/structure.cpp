#include "fraisse/structure.hpp"

#include <algorithm>
#include <unordered_map>

namespace fraisse {

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::PureSet: return "pure-set";
    case StructureKind::RandomGraph: return "random-graph";
    case StructureKind::RationalOrder: return "rational-order";
    case StructureKind::AtomlessBoolean: return "atomless-boolean";
    case StructureKind::IntegerDistance: return "integer-distance";
    case StructureKind::UserRelational: return "user-relational";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::Infinite: return "infinite";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<Point> CandidateStream::take(std::size_t n) {
  std::vector<Point> out;
  out.reserve(std::min<std::size_t>(n, 1 << 16));
  while (out.size() < n) {
    auto p = next();
    if (!p) break;
    out.push_back(*p);
  }
  return out;
}

std::vector<Point> CandidateStream::take_all() {
  if (verdict() == Verdict::Infinite) throw std::logic_error("take_all on an infinite stream");
  std::vector<Point> out;
  while (auto p = next()) out.push_back(*p);
  return out;
}

Point CandidateStream::choose_among_first(std::uint64_t n, RandomSource& rng) {
  auto first = take(static_cast<std::size_t>(n));
  if (first.size() < n) {
    throw RepresentationLimit("candidate stream ended after " + std::to_string(first.size()) +
                              " of " + std::to_string(n) + " requested points");
  }
  return first[rng.uniform(n)];
}

Point CandidateStream::member_at(std::uint64_t k) {
  auto first = take(static_cast<std::size_t>(k + 1));
  if (first.size() <= k) {
    throw RepresentationLimit("candidate stream has no member " + std::to_string(k));
  }
  return first[k];
}

namespace {

class SetClosureTracker final : public ClosureTracker {
 public:
  SetClosureTracker(const CountableStructure& s, PointSet closed)
      : structure_(s), closed_(std::move(closed)) {}
  bool contains(Point x) const override { return fraisse::contains(closed_, x); }
  void adjoin(Point x) override {
    if (contains(x)) return;
    auto with = closed_;
    insert_point(with, x);
    closed_ = structure_.acl(with).points;
  }
  std::unique_ptr<ClosureTracker> clone() const override {
    return std::make_unique<SetClosureTracker>(*this);
  }
  bool subset_of(const ClosureTracker& other) const override {
    return std::all_of(closed_.begin(), closed_.end(), [&](Point p) { return other.contains(p); });
  }
  bool same_as(const ClosureTracker& other) const override {
    return size() == other.size() && subset_of(other);
  }
  std::size_t size() const override { return closed_.size(); }

 private:
  const CountableStructure& structure_;
  PointSet closed_;
};

}  // namespace

std::unique_ptr<ClosureTracker> CountableStructure::closure_tracker(const PointSet& closed) const {
  return std::make_unique<SetClosureTracker>(*this, closed);
}

bool CountableStructure::same_type_over(const PointSet& s, Point b, Point b2) const {
  if (contains(s, b) || contains(s, b2)) return b == b2;
  auto q = PartialAutomorphism::identity(generated(s));
  if (!q.try_add(b, b2)) return false;
  return is_partial_automorphism(q);
}

std::unique_ptr<CandidateStream> CountableStructure::stabilizer_orbit_stream(const PointSet& f,
                                                                             Point x) const {
  auto closed = generated(f);
  if (contains(closed, x)) return std::make_unique<ListStream>(std::vector<Point>{x}, Verdict::Finite);
  return possible_images(PartialAutomorphism::identity(closed), x);
}

PartialAutomorphism CountableStructure::extend_with_fixed_point(const PartialAutomorphism&) const {
  throw Unsupported("extend_with_fixed_point is not available for " + name());
}

std::unique_ptr<ExtensionContext> CountableStructure::make_context(
    const PartialAutomorphism& p) const {
  return std::make_unique<GenericContext>(*this, p);
}

std::vector<Point> CountableStructure::acl_minimal_order(const PointSet& base,
                                                         const PointSet& fresh) const {
  return generic_acl_minimal_order(*this, base, fresh);
}

std::optional<std::uint64_t> CountableStructure::closure_growth_bound(std::uint64_t,
                                                                      std::uint64_t) const {
  return std::nullopt;
}

std::vector<Point> generic_acl_minimal_order(const CountableStructure& s, const PointSet& base,
                                             const PointSet& fresh) {
  std::vector<Point> order;
  std::vector<Point> remaining(fresh.begin(), fresh.end());
  PointSet current = base;
  while (!remaining.empty()) {
    auto inside = std::find_if(remaining.begin(), remaining.end(),
                               [&](Point r) { return contains(current, r); });
    if (inside != remaining.end()) {
      order.push_back(*inside);
      remaining.erase(inside);
      continue;
    }
    std::unordered_map<Point, PointSet, PointHash> closure;
    for (auto r : remaining) {
      auto with = current;
      insert_point(with, r);
      closure.emplace(r, s.acl(with).points);
    }
    // y in acl(current + x) implies acl(current + y) is contained in it, so x is
    // inclusion-minimal iff no such y has a strictly smaller closure.
    auto is_minimal = [&](Point x) {
      const auto& cx = closure.at(x);
      return std::none_of(remaining.begin(), remaining.end(), [&](Point y) {
        return y != x && contains(cx, y) && closure.at(y).size() < cx.size();
      });
    };
    auto pick = std::find_if(remaining.begin(), remaining.end(), is_minimal);
    current = closure.at(*pick);
    order.push_back(*pick);
    remaining.erase(pick);
  }
  return order;
}

}  // namespace fraisse

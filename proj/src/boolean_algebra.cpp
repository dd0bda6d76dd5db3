#include "fraisse/boolean_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace fraisse {
namespace {

using Mask = AtomlessBoolean::Mask;
using u128 = unsigned __int128;

Mask spread(std::uint64_t u) {
  Mask x = u & 0xFFFFFFFFull;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

Mask compress(Mask x) {
  x &= 0x5555555555555555ull;
  x = (x | (x >> 1)) & 0x3333333333333333ull;
  x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x >> 4)) & 0x00FF00FF00FF00FFull;
  x = (x | (x >> 8)) & 0x0000FFFF0000FFFFull;
  x = (x | (x >> 16)) & 0x00000000FFFFFFFFull;
  return x;
}

/// Truth table of depth d-1 refined to depth d (each cell split in two).
Mask refine(Mask t) { return spread(t) * 3; }

Mask expand(Mask table, unsigned d) {
  for (; d < AtomlessBoolean::kMaxDepth; ++d) table = refine(table);
  return table;
}

/// Number of depth-(d-1) tables u whose refinement is < t.
std::uint64_t refined_below(u128 t, unsigned d) {
  std::uint64_t lo = 0;
  std::uint64_t hi = std::uint64_t{1} << (1u << (d - 1));
  while (lo < hi) {
    auto mid = lo + (hi - lo) / 2;
    if (static_cast<u128>(refine(mid)) < t) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::uint64_t depth_offset(unsigned d) { return std::uint64_t{1} << (1u << (d - 1)); }

Mask cell_mask(unsigned d, unsigned k) {
  unsigned width = 1u << (AtomlessBoolean::kMaxDepth - d);
  Mask run = width == 64 ? AtomlessBoolean::kFull : ((Mask{1} << width) - 1);
  return run << (k * width);
}

enum class Need : std::uint8_t { Zero, Full, Proper };

/// Least-index elements meeting a per-block requirement over a fixed partition.
class BlockPatternStream final : public CandidateStream {
 public:
  static constexpr std::uint64_t kNodeBudget = 20'000'000;

  BlockPatternStream(std::vector<Mask> blocks, std::vector<Need> needs)
      : blocks_(std::move(blocks)), needs_(std::move(needs)) {}

  Verdict verdict() const override { return Verdict::Infinite; }

  std::optional<Point> next() override {
    while (depth_ <= AtomlessBoolean::kMaxDepth) {
      if (!exhausted_at_depth_) {
        auto found = search(depth_, start_);
        if (found) {
          auto width = u128{1} << (1u << depth_);
          if (static_cast<u128>(*found) + 1 >= width) {
            exhausted_at_depth_ = true;
          } else {
            start_ = *found + 1;
          }
          return AtomlessBoolean::point_of(expand(*found, depth_));
        }
      }
      ++depth_;
      start_ = 0;
      exhausted_at_depth_ = false;
    }
    throw RepresentationLimit("no further boolean candidates at depth <= 6");
  }

 private:
  struct Frame {
    unsigned cells = 0;
    std::vector<Mask> cell;
    std::vector<std::vector<std::size_t>> touches;
    std::vector<int> allowed;  // bit0: may be 0, bit1: may be 1
  };

  bool exact(Mask m) const {
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      Mask part = m & blocks_[j];
      switch (needs_[j]) {
        case Need::Zero:
          if (part != 0) return false;
          break;
        case Need::Full:
          if (part != blocks_[j]) return false;
          break;
        case Need::Proper:
          if (part == 0 || part == blocks_[j]) return false;
          break;
      }
    }
    return true;
  }

  std::optional<Mask> search(unsigned d, Mask lower) {
    Frame f;
    f.cells = 1u << d;
    f.cell.resize(f.cells);
    f.touches.resize(f.cells);
    f.allowed.assign(f.cells, 3);
    for (unsigned k = 0; k < f.cells; ++k) {
      f.cell[k] = cell_mask(d, k);
      for (std::size_t j = 0; j < blocks_.size(); ++j) {
        if ((f.cell[k] & blocks_[j]) == 0) continue;
        f.touches[k].push_back(j);
        if (needs_[j] == Need::Zero) f.allowed[k] &= 1;
        if (needs_[j] == Need::Full) f.allowed[k] &= 2;
      }
      if (f.allowed[k] == 0) return std::nullopt;
    }
    ones_.assign(blocks_.size(), 0);
    zeros_.assign(blocks_.size(), 0);
    free1_.assign(blocks_.size(), 0);
    free0_.assign(blocks_.size(), 0);
    open_.assign(blocks_.size(), 0);
    for (unsigned k = 0; k < f.cells; ++k) {
      for (auto j : f.touches[k]) {
        ++open_[j];
        if (f.allowed[k] & 2) ++free1_[j];
        if (f.allowed[k] & 1) ++free0_[j];
      }
    }
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (!feasible(j)) return std::nullopt;
    }
    nodes_ = 0;
    Mask table = 0;
    if (dfs(f, d, static_cast<int>(f.cells) - 1, true, lower, table)) return table;
    return std::nullopt;
  }

  bool feasible(std::size_t j) const {
    if (needs_[j] != Need::Proper) return true;
    bool need1 = ones_[j] == 0;
    bool need0 = zeros_[j] == 0;
    if (need1 && free1_[j] == 0) return false;
    if (need0 && free0_[j] == 0) return false;
    if (need1 && need0 && open_[j] < 2) return false;
    return true;
  }

  void assign(const Frame& f, unsigned k, int v, int sign) {
    for (auto j : f.touches[k]) {
      open_[j] -= sign;
      if (f.allowed[k] & 2) free1_[j] -= sign;
      if (f.allowed[k] & 1) free0_[j] -= sign;
      (v ? ones_[j] : zeros_[j]) += sign;
    }
  }

  bool dfs(const Frame& f, unsigned d, int k, bool tight, Mask lower, Mask& table) {
    if (++nodes_ > kNodeBudget) throw RepresentationLimit("boolean candidate search budget exhausted");
    if (k < 0) {
      if (d > 0 && table == refine(compress(table))) return false;
      return exact(expand(table, d));
    }
    int low_bit = tight ? static_cast<int>((lower >> k) & 1u) : 0;
    for (int v = low_bit; v <= 1; ++v) {
      if (!(f.allowed[k] & (v ? 2 : 1))) continue;
      assign(f, static_cast<unsigned>(k), v, 1);
      bool ok = std::all_of(f.touches[k].begin(), f.touches[k].end(),
                            [&](std::size_t j) { return feasible(j); });
      if (ok) {
        if (v) table |= Mask{1} << k;
        if (dfs(f, d, k - 1, tight && v == low_bit, lower, table)) return true;
        table &= ~(Mask{1} << k);
      }
      assign(f, static_cast<unsigned>(k), v, -1);
    }
    return false;
  }

  std::vector<Mask> blocks_;
  std::vector<Need> needs_;
  unsigned depth_ = 0;
  Mask start_ = 0;
  bool exhausted_at_depth_ = false;
  std::vector<int> ones_, zeros_, free1_, free0_, open_;
  std::uint64_t nodes_ = 0;
};

using BlockPairs = std::vector<std::pair<Mask, Mask>>;

bool refine_pairs(BlockPairs& blocks, Mask a, Mask b) {
  BlockPairs out;
  out.reserve(blocks.size() * 2);
  for (auto [d, r] : blocks) {
    Mask d1 = d & a, r1 = r & b, d0 = d & ~a, r0 = r & ~b;
    if ((d1 == 0) != (r1 == 0) || (d0 == 0) != (r0 == 0)) return false;
    if (d1) out.emplace_back(d1, r1);
    if (d0) out.emplace_back(d0, r0);
  }
  blocks = std::move(out);
  return true;
}

/// Candidates for the partner of x, given blocks (source side first).
std::unique_ptr<CandidateStream> partner_stream(const BlockPairs& blocks, Mask x) {
  std::vector<Mask> targets;
  std::vector<Need> needs;
  bool proper = false;
  Mask forced = 0;
  for (auto [d, r] : blocks) {
    Mask part = x & d;
    targets.push_back(r);
    if (part == 0) {
      needs.push_back(Need::Zero);
    } else if (part == d) {
      needs.push_back(Need::Full);
      forced |= r;
    } else {
      needs.push_back(Need::Proper);
      proper = true;
    }
  }
  if (!proper) {
    return std::make_unique<ListStream>(std::vector<Point>{AtomlessBoolean::point_of(forced)},
                                        Verdict::Finite);
  }
  return std::make_unique<BlockPatternStream>(std::move(targets), std::move(needs));
}

BlockPairs swapped(const BlockPairs& blocks) {
  BlockPairs out;
  out.reserve(blocks.size());
  for (auto [d, r] : blocks) out.emplace_back(r, d);
  return out;
}

class BooleanContext final : public ExtensionContext {
 public:
  BooleanContext(PartialAutomorphism p, BlockPairs blocks)
      : map_(std::move(p)), blocks_(std::move(blocks)) {}
  void add(Point from, Point to) override {
    if (!refine_pairs(blocks_, AtomlessBoolean::mask_of(from), AtomlessBoolean::mask_of(to)))
      throw std::logic_error("boolean extension is not an isomorphism");
    map_.add(from, to);
  }
  std::unique_ptr<CandidateStream> images(Point x) override {
    return partner_stream(blocks_, AtomlessBoolean::mask_of(x));
  }
  std::unique_ptr<CandidateStream> preimages(Point y) override {
    return partner_stream(swapped(blocks_), AtomlessBoolean::mask_of(y));
  }
  const PartialAutomorphism& map() const override { return map_; }

 private:
  PartialAutomorphism map_;
  BlockPairs blocks_;
};

bool splits_none(const std::vector<Mask>& atoms, Mask x) {
  return std::all_of(atoms.begin(), atoms.end(), [&](Mask a) {
    Mask part = x & a;
    return part == 0 || part == a;
  });
}

/// Subalgebra tracked by its atoms.
class AtomTracker final : public ClosureTracker {
 public:
  explicit AtomTracker(std::vector<Mask> atoms) : atoms_(std::move(atoms)) {}
  bool contains(Point x) const override {
    return splits_none(atoms_, AtomlessBoolean::mask_of(x));
  }
  void adjoin(Point x) override {
    auto m = AtomlessBoolean::mask_of(x);
    std::vector<Mask> next;
    for (auto a : atoms_) {
      if (a & m) next.push_back(a & m);
      if (a & ~m) next.push_back(a & ~m);
    }
    std::sort(next.begin(), next.end());
    atoms_ = std::move(next);
  }
  std::unique_ptr<ClosureTracker> clone() const override {
    return std::make_unique<AtomTracker>(*this);
  }
  bool subset_of(const ClosureTracker& other) const override {
    const auto& theirs = dynamic_cast<const AtomTracker&>(other).atoms_;
    // Each of our atoms must be a union of their atoms.
    return std::all_of(atoms_.begin(), atoms_.end(),
                       [&](Mask a) { return splits_none(theirs, a); });
  }
  bool same_as(const ClosureTracker& other) const override {
    return atoms_ == dynamic_cast<const AtomTracker&>(other).atoms_;
  }
  std::size_t size() const override {
    return atoms_.size() >= 64 ? SIZE_MAX : std::size_t{1} << atoms_.size();
  }

 private:
  std::vector<Mask> atoms_;
};

std::vector<Mask> masks_of(const PointSet& s) {
  std::vector<Mask> out;
  out.reserve(s.size());
  for (auto p : s) out.push_back(AtomlessBoolean::mask_of(p));
  return out;
}

}  // namespace

unsigned AtomlessBoolean::depth_of(Mask m) {
  unsigned d = kMaxDepth;
  Mask t = m;
  while (d > 0) {
    Mask half = compress(t);
    if (refine(half) != t) break;
    t = half;
    --d;
  }
  return d;
}

Point AtomlessBoolean::point_of(Mask m) {
  auto d = depth_of(m);
  Mask t = m;
  for (unsigned k = kMaxDepth; k > d; --k) t = compress(t);
  if (d == 0) return Point{t};
  return Point{depth_offset(d) + t - refined_below(t, d)};
}

AtomlessBoolean::Mask AtomlessBoolean::mask_of(Point p) {
  auto n = p.index;
  if (n < 2) return n == 0 ? Mask{0} : kFull;
  unsigned d = 1;
  while (d < kMaxDepth && n >= (std::uint64_t{1} << (1u << d))) ++d;
  std::uint64_t rank = n - depth_offset(d);
  // Smallest t with exactly rank+1 depth-d-new tables in [0, t]; the count grows
  // by at most one per step, so jumping by the deficit never overshoots.
  u128 t = rank;
  for (;;) {
    u128 news = t + 1 - refined_below(t + 1, d);
    if (news == static_cast<u128>(rank) + 1) break;
    t += static_cast<u128>(rank) + 1 - news;
  }
  return expand(static_cast<Mask>(t), d);
}

std::vector<AtomlessBoolean::Mask> AtomlessBoolean::atoms_of(const std::vector<Mask>& generators) {
  std::vector<Mask> atoms{kFull};
  for (auto g : generators) {
    std::vector<Mask> next;
    next.reserve(atoms.size() * 2);
    for (auto a : atoms) {
      if (a & g) next.push_back(a & g);
      if (a & ~g) next.push_back(a & ~g);
    }
    atoms = std::move(next);
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

PointSet AtomlessBoolean::algebra_from_atoms(const std::vector<Mask>& atoms) {
  if (atoms.size() > kMaxAtoms) {
    throw CapExceeded("generated subalgebra has " + std::to_string(atoms.size()) +
                      " atoms; cap is " + std::to_string(kMaxAtoms));
  }
  std::size_t count = std::size_t{1} << atoms.size();
  PointSet out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    Mask m = 0;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if ((s >> a) & 1u) m |= atoms[a];
    }
    out.push_back(point_of(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<BlockPairs> AtomlessBoolean::block_pairs(const PartialAutomorphism& p) {
  BlockPairs blocks{{kFull, kFull}};
  for (auto [a, b] : p.pairs()) {
    if (!refine_pairs(blocks, mask_of(a), mask_of(b))) return std::nullopt;
  }
  return blocks;
}

std::string AtomlessBoolean::describe(Point p) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(mask_of(p)));
  return buf;
}

PointSet AtomlessBoolean::generated(const PointSet& s) const {
  return algebra_from_atoms(atoms_of(masks_of(s)));
}

bool AtomlessBoolean::is_partial_automorphism(const PartialAutomorphism& p) const {
  return block_pairs(p).has_value();
}

AclResult AtomlessBoolean::acl(const PointSet& s, std::uint64_t) const {
  return AclResult{generated(s), true, std::nullopt, {}};
}

std::unique_ptr<CandidateStream> AtomlessBoolean::possible_images(const PartialAutomorphism& p,
                                                                  Point x) const {
  auto blocks = block_pairs(p);
  if (!blocks) throw std::invalid_argument("map is not a boolean partial automorphism");
  return partner_stream(*blocks, mask_of(x));
}

PartialAutomorphism AtomlessBoolean::extend_with_fixed_point(const PartialAutomorphism& p) const {
  auto atoms = atoms_of(masks_of(set_union(p.domain(), p.range())));
  Mask x = 0;
  for (auto a : atoms) {
    int cells = std::popcount(a);
    if (cells < 2) throw RepresentationLimit("atom is a single depth-6 cell and cannot be split");
    Mask rest = a;
    for (int k = 0; k < cells / 2; ++k) {
      Mask low = rest & (~rest + 1);
      x |= low;
      rest &= ~low;
    }
  }
  auto out = p;
  out.add(point_of(x), point_of(x));
  return out;
}

std::unique_ptr<ExtensionContext> AtomlessBoolean::make_context(
    const PartialAutomorphism& p) const {
  auto blocks = block_pairs(p);
  if (!blocks) throw std::invalid_argument("map is not a boolean partial automorphism");
  return std::make_unique<BooleanContext>(p, std::move(*blocks));
}

std::vector<Point> AtomlessBoolean::acl_minimal_order(const PointSet& base,
                                                      const PointSet& fresh) const {
  auto atoms = atoms_of(masks_of(base));
  std::vector<std::pair<Point, Mask>> remaining;
  remaining.reserve(fresh.size());
  for (auto p : fresh) remaining.emplace_back(p, mask_of(p));

  auto splits = [&](Mask x) {
    int count = 0;
    for (auto a : atoms) {
      Mask part = x & a;
      if (part != 0 && part != a) ++count;
    }
    return count;
  };

  std::vector<Point> order;
  order.reserve(fresh.size());
  while (!remaining.empty()) {
    std::vector<std::pair<Point, Mask>> outside;
    outside.reserve(remaining.size());
    for (auto& e : remaining) {
      if (splits(e.second) == 0) {
        order.push_back(e.first);
      } else {
        outside.push_back(e);
      }
    }
    remaining = std::move(outside);
    if (remaining.empty()) break;
    // A one-atom split is inclusion-minimal: any element splitting several atoms
    // has a one-atom part (also remaining) with a strictly smaller closure.
    auto pick = std::find_if(remaining.begin(), remaining.end(),
                             [&](const auto& e) { return splits(e.second) == 1; });
    if (pick == remaining.end()) throw std::logic_error("fresh set is not a subalgebra extension");
    order.push_back(pick->first);
    auto chosen = pick->second;
    remaining.erase(pick);
    std::vector<Mask> next;
    for (auto a : atoms) {
      if (a & chosen) next.push_back(a & chosen);
      if (a & ~chosen) next.push_back(a & ~chosen);
    }
    atoms = std::move(next);
  }
  return order;
}

std::unique_ptr<ClosureTracker> AtomlessBoolean::closure_tracker(const PointSet& closed) const {
  return std::make_unique<AtomTracker>(atoms_of(masks_of(closed)));
}

std::optional<std::uint64_t> AtomlessBoolean::closure_growth_bound(std::uint64_t size,
                                                                   std::uint64_t added) const {
  unsigned atoms = static_cast<unsigned>(std::bit_width(std::max<std::uint64_t>(size, 1)) - 1);
  std::uint64_t bound_atoms = atoms;
  for (std::uint64_t k = 0; k < added; ++k) {
    bound_atoms = std::min<std::uint64_t>(bound_atoms * 2 + (bound_atoms == 0 ? 1 : 0), 64);
  }
  if (bound_atoms >= 63) return std::nullopt;
  return std::uint64_t{1} << bound_atoms;
}

}  // namespace fraisse

#include "fraisse/process.hpp"

#include <algorithm>
#include <stdexcept>

namespace fraisse {
namespace {

class NaturalsStream final : public CandidateStream {
 public:
  Verdict verdict() const override { return Verdict::Infinite; }
  std::optional<Point> next() override { return Point{cursor_++}; }

 private:
  std::uint64_t cursor_ = 0;
};

/// Raised by the scripted chooser at the first unscripted choice.
struct BranchPoint {
  std::uint64_t count;
};

ProcessParams with_explicit_windows(const ProcessParams& params, std::vector<std::uint64_t> N,
                                    unsigned stages) {
  auto out = params;
  out.N = std::move(N);
  out.stages = stages;
  return out;
}

}  // namespace

ProcessParams ProcessParams::defaults(unsigned stages, std::uint64_t seed) {
  ProcessParams p;
  for (unsigned i = 1; i <= stages; ++i) p.M.push_back(i < 64 ? std::uint64_t{1} << i : UINT64_MAX);
  p.stages = stages;
  p.seed = seed;
  return p;
}

std::uint64_t ProcessParams::M_at(unsigned stage) const {
  if (M.empty()) return stage < 64 ? std::uint64_t{1} << stage : UINT64_MAX;
  return M[std::min<std::size_t>(stage - 1, M.size() - 1)];
}

Ratio ProcessParams::epsilon_at(unsigned stage) const {
  if (!epsilon || epsilon->empty()) {
    if (stage >= 64) throw std::overflow_error("epsilon 2^-i needs i < 64");
    return Ratio{1, std::uint64_t{1} << stage};
  }
  return (*epsilon)[std::min<std::size_t>(stage - 1, epsilon->size() - 1)];
}

std::uint64_t window_from_bound(std::uint64_t k, std::uint64_t K, std::uint64_t j, Ratio epsilon) {
  if (epsilon.num == 0 || epsilon.den == 0 || epsilon.num > epsilon.den)
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  using u128 = unsigned __int128;
  u128 product = static_cast<u128>(k) * K;
  if (product >> 64) throw std::overflow_error("window bound exceeds 64 bits");
  product *= j;
  if (product >> 64) throw std::overflow_error("window bound exceeds 64 bits");
  product *= epsilon.den;
  u128 window = product / epsilon.num + 1;
  if (window >> 64) throw std::overflow_error("window bound exceeds 64 bits");
  return static_cast<std::uint64_t>(window);
}

OrbitSchedule::OrbitSchedule(StructurePtr structure) : structure_(std::move(structure)) {}

std::size_t OrbitSchedule::entry_index_at(std::size_t position) {
  std::size_t block = 0;
  while ((block + 1) * (block + 2) / 2 <= position) ++block;
  return position - block * (block + 1) / 2;
}

const OrbitEntry& OrbitSchedule::entry(std::size_t t) {
  if (!structure_->has_exact_acl())
    throw Unsupported("orbit schedule needs an exact algebraic closure for " + structure_->name());
  while (entries_.size() <= t) {
    std::uint64_t code = code_;
    Point r{diagonal_ - code_};
    if (++code_ > diagonal_) {
      ++diagonal_;
      code_ = 0;
    }
    if (code >= (std::uint64_t{1} << 63)) throw RepresentationLimit("orbit schedule code overflow");
    std::vector<Point> fixed;
    for (unsigned b = 0; b < 64; ++b) {
      if ((code >> b) & 1u) fixed.emplace_back(b);
    }
    auto F = make_point_set(fixed);
    if (contains(structure_->acl(F).points, r)) continue;
    auto stream = structure_->stabilizer_orbit_stream(F, r);
    if (stream->verdict() == Verdict::Finite) continue;
    auto first = stream->next();
    if (first && *first == r) entries_.push_back(OrbitEntry{F, r});
  }
  return entries_[t];
}

std::unique_ptr<CandidateStream> OrbitSchedule::orbit(std::size_t position) {
  const auto& e = at(position);
  return structure_->stabilizer_orbit_stream(e.fixed, e.representative);
}

PointSet least_outside(CandidateStream& source, const PartialAutomorphism& map, bool range_side,
                       std::uint64_t count) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < count) {
    auto p = source.next();
    if (!p) throw std::logic_error("orbit exhausted before S was filled");
    if (range_side ? map.in_range(*p) : map.in_domain(*p)) continue;
    out.push_back(*p);
  }
  return make_point_set(out);
}

std::vector<Point> acl_minimal_enumeration(const CountableStructure& s, const PointSet& base,
                                           const PointSet& added) {
  return s.acl_minimal_order(base, added);
}

std::uint64_t compute_k(const CountableStructure& s, const PointSet& base, Point x1, Point xm) {
  auto fixed = base;
  insert_point(fixed, xm);
  auto stream = s.stabilizer_orbit_stream(fixed, x1);
  if (stream->verdict() != Verdict::Finite)
    throw std::logic_error("orbit of x_1 over base + x_m is not certified finite");
  return stream->take_all().size();
}

Process::Process(StructurePtr structure, ProcessParams params)
    : structure_(std::move(structure)), params_(std::move(params)), schedule_(structure_) {
  if (!structure_->has_exact_acl())
    throw Unsupported("the staged process needs an exact algebraic closure; " +
                      structure_->name() + " has none");
  initial_ = PartialAutomorphism::identity(structure_->acl({}).points);
  context_ = structure_->make_context(initial_);
}

PointSet Process::select_S(unsigned stage, std::uint64_t count) {
  bool range_side = stage % 2 == 0;
  std::unique_ptr<CandidateStream> source;
  switch (stage % 4) {
    case 0:
    case 1: source = std::make_unique<NaturalsStream>(); break;
    case 2: source = schedule_.orbit((stage - 2) / 4); break;
    default: source = schedule_.orbit((stage - 3) / 4); break;
  }
  return least_outside(*source, map(), range_side, count);
}

std::uint64_t Process::window_for(unsigned stage) {
  WindowChoice w;
  if (params_.N) {
    if (params_.N->empty()) throw std::invalid_argument("empty N schedule");
    w.N = (*params_.N)[std::min<std::size_t>(stage - 1, params_.N->size() - 1)];
    w.from_list = true;
  } else {
    w = choose_N(*structure_, params_, stage);
  }
  if (w.N == 0) throw std::invalid_argument("N_i must be positive");
  windows_.push_back(w);
  return w.N;
}

void Process::run_stage(const Chooser* chooser) {
  unsigned i = stage_ + 1;
  bool even = i % 2 == 0;
  auto M = params_.M_at(i);
  if (M == 0) throw std::invalid_argument("M_i must be positive");
  auto N = window_for(i);

  PointSet base = even ? map().range() : map().domain();
  auto S = select_S(i, M);
  auto closure = structure_->acl(set_union(base, S)).points;
  auto added = set_difference(closure, base);
  auto order = acl_minimal_enumeration(*structure_, base, added);

  auto rng = RandomSource::substream(params_.seed, i);
  for (std::size_t k = 0; k < order.size(); ++k) {
    Point x = order[k];
    auto stream = even ? context_->preimages(x) : context_->images(x);
    Event e;
    e.stage = i;
    e.substep = k;
    e.x = x;
    if (stream->verdict() == Verdict::Finite) {
      auto all = stream->take_all();
      if (all.empty()) throw std::logic_error("no valid partner for a closure point");
      if (k == 0) throw std::logic_error("first new point has a finite candidate set");
      e.mode = ChoiceMode::Finite;
      e.candidates = all.size();
      auto idx = chooser ? (*chooser)(e) : rng.uniform(all.size());
      e.chosen = all.at(idx);
    } else {
      e.mode = ChoiceMode::Window;
      e.candidates = N;
      e.chosen = chooser ? stream->member_at((*chooser)(e)) : stream->choose_among_first(N, rng);
    }
    if (even) {
      context_->add(e.chosen, x);
    } else {
      context_->add(x, e.chosen);
    }
    trace_.push_back(e);
  }
  last_base_ = std::move(base);
  last_order_ = std::move(order);
  stage_ = i;
}

void Process::run_all(const Chooser* chooser) {
  while (stage_ < params_.stages) run_stage(chooser);
}

SampleResult sample(StructurePtr structure, const ProcessParams& params) {
  Process p(std::move(structure), params);
  p.run_all();
  return SampleResult{p.initial(), p.map(), p.trace(), p.windows()};
}

std::optional<std::vector<PartialAutomorphism>> enumerate_outcomes(StructurePtr structure,
                                                                   const ProcessParams& params,
                                                                   unsigned stages,
                                                                   std::uint64_t budget) {
  if (!params.N) throw std::invalid_argument("outcome enumeration needs explicit N");
  auto fixed = params;
  fixed.stages = stages;
  std::vector<PartialAutomorphism> outcomes;
  std::vector<std::vector<std::uint64_t>> pending{{}};
  while (!pending.empty()) {
    auto script = std::move(pending.back());
    pending.pop_back();
    std::size_t used = 0;
    Chooser follow = [&](const Event& e) -> std::uint64_t {
      if (used < script.size()) return script[used++];
      throw BranchPoint{e.candidates};
    };
    Process p(structure, fixed);
    try {
      p.run_all(&follow);
      outcomes.push_back(p.map());
      if (outcomes.size() > budget) return std::nullopt;
    } catch (const BranchPoint& b) {
      if (outcomes.size() + pending.size() + b.count > budget) return std::nullopt;
      for (std::uint64_t c = b.count; c-- > 0;) {
        auto next = script;
        next.push_back(c);
        pending.push_back(std::move(next));
      }
    }
  }
  return outcomes;
}

WindowChoice choose_N(const CountableStructure& s, const ProcessParams& params, unsigned stage) {
  WindowChoice w;
  auto base_size = s.acl({}).points.size();
  if (s.has_trivial_acl()) {
    std::uint64_t K = base_size;
    for (unsigned l = 1; l <= stage; ++l) K += params.M_at(l);
    w.K = K;
    w.k = 1;
    w.j = params.M_at(stage);
    w.N = window_from_bound(w.k, w.K, w.j, params.epsilon_at(stage));
    return w;
  }

  // Non-trivial closure: exhaust the reachable maps while the budget allows,
  // then fall back to the structure's closure growth bound.
  auto shared = std::shared_ptr<const CountableStructure>(&s, [](const CountableStructure*) {});
  std::vector<std::uint64_t> windows;
  std::optional<std::vector<PartialAutomorphism>> outcomes =
      std::vector<PartialAutomorphism>{PartialAutomorphism::identity(s.acl({}).points)};
  std::uint64_t bound_prev = base_size;
  for (unsigned l = 1; l <= stage; ++l) {
    WindowChoice cur;
    if (outcomes) {
      OrbitSchedule sched(shared);
      for (const auto& prev : *outcomes) {
        bool even = l % 2 == 0;
        PointSet base = even ? prev.range() : prev.domain();
        // S_l depends only on the previous map.
        std::unique_ptr<CandidateStream> source;
        if (l % 4 <= 1) {
          source = std::make_unique<NaturalsStream>();
        } else {
          source = sched.orbit(l % 4 == 2 ? (l - 2) / 4 : (l - 3) / 4);
        }
        auto S = least_outside(*source, prev, even, params.M_at(l));
        auto closure = s.acl(set_union(base, S)).points;
        auto added = set_difference(closure, base);
        cur.K = std::max<std::uint64_t>(cur.K, closure.size());
        cur.j = std::max<std::uint64_t>(cur.j, added.size());
        auto order = s.acl_minimal_order(base, added);
        if (!order.empty()) {
          auto first_closure = s.acl(set_union(base, PointSet{order.front()})).points;
          for (std::size_t m = 1; m < order.size() && contains(first_closure, order[m]); ++m) {
            cur.k = std::max(cur.k, compute_k(s, base, order.front(), order[m]));
          }
        }
      }
    } else {
      auto grown = s.closure_growth_bound(bound_prev, params.M_at(l));
      if (!grown) throw Unsupported("no finite closure growth bound for " + s.name());
      cur.K = *grown;
      cur.j = *grown;
      if (!s.acl_is_generation())
        throw Unsupported("cannot bound orbit sizes without outcome enumeration for " + s.name());
      cur.k = 1;
      cur.conservative = true;
    }
    bound_prev = cur.K;
    cur.N = window_from_bound(cur.k, cur.K, cur.j, params.epsilon_at(l));
    if (l == stage) return cur;
    windows.push_back(cur.N);
    if (outcomes) {
      outcomes = enumerate_outcomes(shared, with_explicit_windows(params, windows, l), l,
                                    Process::kOutcomeBudget);
    }
  }
  return w;
}

std::vector<std::string> check_stage_invariants(const CountableStructure& s,
                                                const PartialAutomorphism& before,
                                                const PartialAutomorphism& after) {
  std::vector<std::string> out;
  if (!after.extends(before)) out.push_back("stage map does not extend its predecessor");
  if (s.has_exact_acl()) {
    auto dom = after.domain();
    auto ran = after.range();
    if (s.acl(dom).points != dom) out.push_back("domain is not acl-closed");
    if (s.acl(ran).points != ran) out.push_back("range is not acl-closed");
  }
  if (!s.is_partial_automorphism(after)) out.push_back("stage map is not a partial automorphism");
  return out;
}

std::vector<std::string> check_ordering_claims(const CountableStructure& s, const PointSet& base,
                                               const std::vector<Point>& order) {
  std::vector<std::string> out;
  auto describe = [&](std::size_t k) { return "x_" + std::to_string(k + 1); };

  // Closure blocks: [start, end) runs over which acl(base + x_1..x_k) is constant.
  struct Block {
    std::size_t start, end;
    std::unique_ptr<ClosureTracker> before, after;
  };
  std::vector<Block> blocks;
  auto current = s.closure_tracker(base);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (current->contains(order[k]) && !blocks.empty()) {
      blocks.back().end = k + 1;
      continue;
    }
    if (current->contains(order[k])) {
      out.push_back(describe(k) + " already lies in the base closure");
      continue;
    }
    Block b{k, k + 1, current->clone(), nullptr};
    current->adjoin(order[k]);
    b.after = current->clone();
    blocks.push_back(std::move(b));
  }

  for (const auto& b : blocks) {
    // Points of the block closure must all come before any later block.
    for (std::size_t m = b.end; m < order.size(); ++m) {
      if (b.after->contains(order[m])) {
        out.push_back(describe(m) + " lies in the closure after " + describe(b.start) +
                      " but is enumerated after a later closure step");
      }
    }
    // k = block start: for each x_m in the block, acl(before + x_m) must sit inside
    // the block closure and contain x_k..x_m.
    for (std::size_t m = b.start; m < b.end; ++m) {
      auto with = b.before->clone();
      with->adjoin(order[m]);
      if (!with->subset_of(*b.after)) {
        out.push_back("acl with " + describe(m) + " escapes the closure of " + describe(b.start));
        continue;
      }
      if (with->same_as(*b.after)) continue;
      for (std::size_t l = b.start; l <= m; ++l) {
        if (!with->contains(order[l])) {
          out.push_back(describe(l) + " is missing from acl(base, x_1.." + describe(b.start) +
                        "-1, " + describe(m) + ")");
        }
      }
    }
  }
  // Positions inside a block (k > start) have acl(before + x_m) equal to the block
  // closure for every later block member, so they add nothing beyond the checks above.
  return out;
}

}  // namespace fraisse

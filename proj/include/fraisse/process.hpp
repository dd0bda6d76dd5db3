#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Positive rational in (0, 1].
struct Ratio {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
};

/// Per-stage parameters; entry i-1 belongs to stage i. A schedule shorter than
/// the run repeats its last value.
struct ProcessParams {
  std::vector<std::uint64_t> M;
  /// Explicit candidate-window sizes; nullopt selects them from the bad-event bound.
  std::optional<std::vector<std::uint64_t>> N;
  /// nullopt means 2^-i.
  std::optional<std::vector<Ratio>> epsilon;
  unsigned stages = 0;
  std::uint64_t seed = 0;

  /// M_i = 2^i for i = 1..stages, automatic N, epsilon_i = 2^-i.
  static ProcessParams defaults(unsigned stages, std::uint64_t seed);

  std::uint64_t M_at(unsigned stage) const;
  Ratio epsilon_at(unsigned stage) const;
};

struct OrbitEntry {
  PointSet fixed;
  Point representative;
};

/// Fair interleaving of (finite F, infinite orbit of the stabilizer of F).
///
/// Candidate pairs (code c, point r) are visited in Cantor order of (c, r);
/// F is the set of points whose indices are the set bits of c. A pair becomes a
/// distinct entry when r lies outside acl(F) and is the least member of its
/// orbit. Position n of the schedule holds entry t where n = b(b+1)/2 + t,
/// 0 <= t <= b, so every entry recurs in every later block and an entry at
/// position n reappears by position 2n + 2.
class OrbitSchedule {
 public:
  explicit OrbitSchedule(StructurePtr structure);

  static std::size_t entry_index_at(std::size_t position);
  const OrbitEntry& entry(std::size_t t);
  const OrbitEntry& at(std::size_t position) { return entry(entry_index_at(position)); }
  std::unique_ptr<CandidateStream> orbit(std::size_t position);

 private:
  StructurePtr structure_;
  std::vector<OrbitEntry> entries_;
  std::uint64_t diagonal_ = 0;
  std::uint64_t code_ = 0;
};

enum class ChoiceMode { Finite, Window };

struct Event {
  unsigned stage = 0;
  std::uint64_t substep = 0;
  Point x;
  Point chosen;
  ChoiceMode mode = ChoiceMode::Window;
  /// Size of the finite candidate set, or the window N_i in window mode.
  std::uint64_t candidates = 0;
};

/// Record of how N_i was obtained.
struct WindowChoice {
  std::uint64_t N = 0;
  std::uint64_t K = 0;  ///< bound on |dom(p_i)|
  std::uint64_t k = 1;
  std::uint64_t j = 0;
  bool from_list = false;
  /// K came from the structure's growth bound after outcome enumeration ran out of budget.
  bool conservative = false;
};

/// Chooses index k in [0, count) for a substep; used for scripted expansion.
using Chooser = std::function<std::uint64_t(const Event& request)>;

/// Smallest integer > k*K*j/epsilon; throws std::overflow_error beyond 64 bits.
std::uint64_t window_from_bound(std::uint64_t k, std::uint64_t K, std::uint64_t j, Ratio epsilon);

class Process {
 public:
  static constexpr std::uint64_t kOutcomeBudget = 10'000;

  Process(StructurePtr structure, ProcessParams params);

  unsigned stage() const { return stage_; }
  const PartialAutomorphism& map() const { return context_->map(); }
  const PartialAutomorphism& initial() const { return initial_; }
  const std::vector<Event>& trace() const { return trace_; }
  const std::vector<WindowChoice>& windows() const { return windows_; }
  const ProcessParams& params() const { return params_; }
  const CountableStructure& structure() const { return *structure_; }
  OrbitSchedule& schedule() { return schedule_; }

  /// Points added at the most recent stage in the order they were processed,
  /// with the closed set they were added to.
  const std::vector<Point>& last_order() const { return last_order_; }
  const PointSet& last_base() const { return last_base_; }

  /// S_i for the next stage, given the current map.
  PointSet select_S(unsigned stage, std::uint64_t count);

  /// Runs the next stage; a chooser replaces the random draws when given.
  void run_stage(const Chooser* chooser = nullptr);
  void run_all(const Chooser* chooser = nullptr);

 private:
  std::uint64_t window_for(unsigned stage);

  StructurePtr structure_;
  ProcessParams params_;
  PartialAutomorphism initial_;
  std::unique_ptr<ExtensionContext> context_;
  OrbitSchedule schedule_;
  unsigned stage_ = 0;
  std::vector<Event> trace_;
  std::vector<WindowChoice> windows_;
  std::vector<Point> last_order_;
  PointSet last_base_;
};

struct SampleResult {
  PartialAutomorphism initial;
  PartialAutomorphism final_map;
  std::vector<Event> trace;
  std::vector<WindowChoice> windows;
};

SampleResult sample(StructurePtr structure, const ProcessParams& params);

/// Least M elements of the sorted-stream `source` avoiding `used`.
PointSet least_outside(CandidateStream& source, const PartialAutomorphism& map, bool range_side,
                       std::uint64_t count);

/// Ordering of acl(base + S) \ base used by a stage.
std::vector<Point> acl_minimal_enumeration(const CountableStructure& s, const PointSet& base,
                                           const PointSet& added);

/// Orbit size of x1 under the pointwise stabilizer of base + {xm}.
std::uint64_t compute_k(const CountableStructure& s, const PointSet& base, Point x1, Point xm);

/// N_i from the bad-event bound (K = m_i, k, j = largest possible new-point count).
WindowChoice choose_N(const CountableStructure& s, const ProcessParams& params, unsigned stage);

/// Every reachable map after `stages` stages (each window and finite set
/// explored exhaustively), or nullopt when more than `budget` outcomes arise.
std::optional<std::vector<PartialAutomorphism>> enumerate_outcomes(StructurePtr structure,
                                                                   const ProcessParams& params,
                                                                   unsigned stages,
                                                                   std::uint64_t budget);

/// Violations of stage monotonicity, acl-closedness of dom/ran and validity.
std::vector<std::string> check_stage_invariants(const CountableStructure& s,
                                                const PartialAutomorphism& before,
                                                const PartialAutomorphism& after);

/// Violations of the nested-closure property of an acl-minimal ordering: for
/// k <= l <= m, x_m in acl(base + x_1..x_k) implies
/// x_l in acl(base + x_1..x_{k-1} + x_m), which is contained in acl(base + x_1..x_k).
std::vector<std::string> check_ordering_claims(const CountableStructure& s, const PointSet& base,
                                               const std::vector<Point>& order);

}  // namespace fraisse

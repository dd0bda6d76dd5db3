#include "fraisse/amalgamation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fraisse {
namespace {

std::string describe_map(const std::vector<std::size_t>& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < m.size(); ++k) out << (k ? " " : "") << m[k];
  out << "]";
  return out.str();
}

std::string describe_instance(const AmalgamationInstance& inst) {
  return "B{" + inst.B.describe() + "} C{" + inst.C.describe() + "} D{" + inst.D.describe() +
         "} psi=" + describe_map(inst.psi) + " chi=" + describe_map(inst.chi);
}

std::vector<std::size_t> decode(std::size_t index, std::size_t size, std::size_t arity) {
  std::vector<std::size_t> tuple(arity);
  for (std::size_t k = arity; k-- > 0;) {
    tuple[k] = index % size;
    index /= size;
  }
  return tuple;
}

/// Partial injections from `from` into `to`, as a map from from-position to to-point
/// (nullopt = unmatched), sorted by number of matches.
std::vector<std::vector<std::optional<std::size_t>>> identification_patterns(
    const std::vector<std::size_t>& from, const std::vector<std::size_t>& to, bool strong) {
  std::vector<std::vector<std::optional<std::size_t>>> out;
  std::vector<std::optional<std::size_t>> current(from.size());
  std::vector<bool> used(to.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == from.size()) {
      out.push_back(current);
      return;
    }
    current[k] = std::nullopt;
    rec(k + 1);
    if (strong) return;
    for (std::size_t t = 0; t < to.size(); ++t) {
      if (used[t]) continue;
      used[t] = true;
      current[k] = to[t];
      rec(k + 1);
      used[t] = false;
    }
    current[k] = std::nullopt;
  };
  rec(0);
  auto matches = [](const auto& p) { return std::count_if(p.begin(), p.end(), [](auto v) { return v.has_value(); }); };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return matches(a) < matches(b); });
  return out;
}

template <typename Visit>
void for_each_instance(const std::vector<FiniteStructure>& reps, std::size_t max_size,
                       const std::vector<FiniteStructure>& bases, Visit&& visit) {
  for (const auto& B : bases) {
    for (const auto& C : reps) {
      if (C.size() < B.size() || C.size() > max_size) continue;
      auto psis = embeddings(B, C);
      if (psis.empty()) continue;
      for (const auto& D : reps) {
        if (D.size() < B.size() || D.size() > max_size) continue;
        auto chis = embeddings(B, D);
        for (const auto& psi : psis)
          for (const auto& chi : chis) visit(AmalgamationInstance{B, C, D, psi, chi});
      }
    }
  }
}

ClassReport summarize(const ClassSpec& cls, std::size_t n, bool strong, std::size_t extra,
                      const std::vector<AmalgamationInstance>& instances,
                      const std::vector<AmalgamKind>& kinds) {
  ClassReport report;
  report.class_name = cls.name;
  report.max_size = n;
  report.bound = 2 * n + extra;
  report.strong = strong;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    ++report.instances;
    if (kinds[k] != AmalgamKind::Counterexample) ++report.amalgamated;
    if (kinds[k] == AmalgamKind::StrongAmalgamFound) ++report.strongly_amalgamated;
    bool failed = strong ? kinds[k] != AmalgamKind::StrongAmalgamFound
                         : kinds[k] == AmalgamKind::Counterexample;
    if (failed && !report.counterexample) report.counterexample = describe_instance(instances[k]);
  }
  return report;
}

ClassReport sweep(const ClassSpec& cls, std::size_t n, bool strong, std::size_t extra, bool parallel) {
  std::vector<FiniteStructure> reps;
  try {
    reps = enumerate_structures(cls, n, true);
  } catch (const BudgetExceeded& e) {
    ClassReport report;
    report.class_name = cls.name;
    report.max_size = n;
    report.complete = false;
    report.note = e.what();
    return report;
  }
  std::vector<AmalgamationInstance> instances;
  for_each_instance(reps, n, reps, [&](AmalgamationInstance inst) { instances.push_back(std::move(inst)); });
  std::vector<AmalgamKind> kinds(instances.size());
  auto count = static_cast<std::int64_t>(instances.size());
  auto check = [&](std::int64_t k) {
    const auto& inst = instances[k];
    kinds[k] = check_instance(cls, inst, strong, inst.C.size() + inst.D.size() - inst.B.size() + extra).kind;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) check(k);
  } else {
    for (std::int64_t k = 0; k < count; ++k) check(k);
  }
  return summarize(cls, n, strong, extra, instances, kinds);
}

}  // namespace

std::string to_string(AmalgamKind kind) {
  switch (kind) {
    case AmalgamKind::AmalgamFound: return "amalgam-found";
    case AmalgamKind::StrongAmalgamFound: return "strong-amalgam-found";
    case AmalgamKind::Counterexample: return "counterexample";
  }
  return "unknown";
}

std::size_t default_amalgam_bound(const AmalgamationInstance& inst) {
  return inst.C.size() + inst.D.size() - inst.B.size() + 2;
}

AmalgamationVerdict check_instance(const ClassSpec& cls, const AmalgamationInstance& inst,
                                   bool strong, std::size_t bound) {
  if (!is_embedding(inst.B, inst.C, inst.psi) || !is_embedding(inst.B, inst.D, inst.chi))
    throw std::invalid_argument("instance maps are not embeddings");
  AmalgamationVerdict verdict;
  verdict.bound = bound;
  const auto c = inst.C.size();
  const auto d = inst.D.size();
  std::vector<std::size_t> c_rest, d_rest;
  for (std::size_t x = 0; x < c; ++x)
    if (std::find(inst.psi.begin(), inst.psi.end(), x) == inst.psi.end()) c_rest.push_back(x);
  for (std::size_t y = 0; y < d; ++y)
    if (std::find(inst.chi.begin(), inst.chi.end(), y) == inst.chi.end()) d_rest.push_back(y);

  for (const auto& pattern : identification_patterns(d_rest, c_rest, strong)) {
    // chi' sends chi(b) to psi(b), matched points to their partner, the rest past C.
    std::vector<std::size_t> chi_prime(d);
    for (std::size_t b = 0; b < inst.chi.size(); ++b) chi_prime[inst.chi[b]] = inst.psi[b];
    std::size_t e = c;
    bool identified = false;
    for (std::size_t k = 0; k < d_rest.size(); ++k) {
      if (pattern[k]) {
        chi_prime[d_rest[k]] = *pattern[k];
        identified = true;
      } else {
        chi_prime[d_rest[k]] = e++;
      }
    }
    if (e > bound) continue;
    std::vector<std::optional<std::size_t>> from_d(e);
    for (std::size_t y = 0; y < d; ++y) from_d[chi_prime[y]] = y;

    std::vector<std::vector<std::int8_t>> table;
    std::vector<std::pair<std::size_t, std::size_t>> open;
    bool conflict = false;
    for (std::size_t r = 0; r < cls.signature.relations.size() && !conflict; ++r) {
      auto arity = cls.signature.relations[r].arity;
      std::size_t cells = 1;
      for (std::size_t k = 0; k < arity; ++k) cells *= e;
      table.emplace_back(cells, -1);
      for (std::size_t idx = 0; idx < cells; ++idx) {
        auto tuple = decode(idx, e, arity);
        bool in_c = std::all_of(tuple.begin(), tuple.end(), [&](auto v) { return v < c; });
        bool in_d = std::all_of(tuple.begin(), tuple.end(), [&](auto v) { return from_d[v].has_value(); });
        std::int8_t value = -1;
        if (in_c) value = inst.C.holds(r, tuple) ? 1 : 0;
        if (in_d) {
          std::vector<std::size_t> back(arity);
          for (std::size_t k = 0; k < arity; ++k) back[k] = *from_d[tuple[k]];
          std::int8_t dv = inst.D.holds(r, back) ? 1 : 0;
          if (value >= 0 && value != dv) {
            conflict = true;
            break;
          }
          value = dv;
        }
        table[r][idx] = value;
        if (value < 0) open.emplace_back(r, idx);
      }
    }
    if (conflict) continue;

    auto lookup = [&](std::size_t r, const std::vector<std::size_t>& tuple) {
      std::size_t idx = 0;
      for (auto v : tuple) idx = idx * e + v;
      auto v = table[r][idx];
      return v < 0 ? Truth::Unknown : (v ? Truth::True : Truth::False);
    };
    std::function<bool(std::size_t)> fill = [&](std::size_t depth) {
      ++verdict.nodes;
      if (!may_satisfy(cls, e, lookup)) return false;
      if (depth == open.size()) return true;
      auto [r, idx] = open[depth];
      for (std::int8_t v : {0, 1}) {
        table[r][idx] = v;
        if (fill(depth + 1)) return true;
      }
      table[r][idx] = -1;
      return false;
    };
    if (!fill(0)) continue;

    FiniteStructure E(cls.signature, e);
    for (std::size_t r = 0; r < table.size(); ++r)
      for (std::size_t idx = 0; idx < table[r].size(); ++idx)
        E.table(r)[idx] = static_cast<std::uint8_t>(table[r][idx]);
    verdict.kind = identified ? AmalgamKind::AmalgamFound : AmalgamKind::StrongAmalgamFound;
    verdict.E = std::move(E);
    verdict.psi_prime.resize(c);
    std::iota(verdict.psi_prime.begin(), verdict.psi_prime.end(), 0);
    verdict.chi_prime = std::move(chi_prime);
    return verdict;
  }
  return verdict;
}

bool verify_witness(const ClassSpec& cls, const AmalgamationInstance& inst,
                    const AmalgamationVerdict& verdict, bool strong) {
  if (verdict.kind == AmalgamKind::Counterexample || !verdict.E) return false;
  const auto& E = *verdict.E;
  if (!satisfies(cls, E)) return false;
  if (!is_embedding(inst.C, E, verdict.psi_prime) || !is_embedding(inst.D, E, verdict.chi_prime))
    return false;
  std::set<std::size_t> base_image;
  for (std::size_t b = 0; b < inst.B.size(); ++b) {
    auto via_c = verdict.psi_prime[inst.psi[b]];
    if (via_c != verdict.chi_prime[inst.chi[b]]) return false;
    base_image.insert(via_c);
  }
  if (!strong) return true;
  std::set<std::size_t> c_image(verdict.psi_prime.begin(), verdict.psi_prime.end());
  std::set<std::size_t> meet;
  for (auto v : verdict.chi_prime)
    if (c_image.contains(v)) meet.insert(v);
  return meet == base_image;
}

ClassReport check_sap_class(const ClassSpec& cls, std::size_t n, bool strong, std::size_t extra_points) {
  return sweep(cls, n, strong, extra_points, false);
}

ClassReport check_sap_class_parallel(const ClassSpec& cls, std::size_t n, bool strong,
                                     std::size_t extra_points) {
  return sweep(cls, n, strong, extra_points, true);
}

bool CsapReport::passed() const {
  return !entries.empty() &&
         std::all_of(entries.begin(), entries.end(), [](const CsapEntry& e) { return e.witness.has_value(); });
}

CsapReport check_csap_class(const ClassSpec& cls, std::size_t n, std::size_t bound) {
  CsapReport report;
  report.class_name = cls.name;
  report.max_size = n;
  report.bound = bound;
  auto reps = enumerate_structures(cls, std::max(n, bound + 1), true);
  for (const auto& B0 : reps) {
    if (B0.size() > n) continue;
    CsapEntry entry{B0.describe(), std::nullopt};
    // B0 itself first, then larger candidates in enumeration order.
    std::vector<const FiniteStructure*> candidates{&B0};
    for (const auto& B : reps)
      if (B.size() >= B0.size() && B.size() <= bound && !(B == B0)) candidates.push_back(&B);
    for (const auto* B : candidates) {
      if (embeddings(B0, *B).empty()) continue;
      auto limit = std::max(n, B->size() + 1);
      bool all_strong = true;
      for_each_instance(reps, limit, std::vector<FiniteStructure>{*B}, [&](AmalgamationInstance inst) {
        if (!all_strong) return;
        auto v = check_instance(cls, inst, true, default_amalgam_bound(inst));
        if (v.kind != AmalgamKind::StrongAmalgamFound) all_strong = false;
      });
      if (all_strong) {
        entry.witness = B->describe();
        break;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// ---- Boolean algebras ----

BooleanVerdict check_boolean_instance(const BooleanInstance& inst, std::size_t atom_bound) {
  const auto c = inst.c_over_b.size();
  const auto d = inst.d_over_b.size();
  BooleanVerdict verdict;
  verdict.bound = atom_bound;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (inst.c_over_b[i] == inst.d_over_b[j]) pairs.emplace_back(i, j);

  // E is determined up to isomorphism by the multiset of (C-atom, D-atom) pairs its atoms sit under.
  auto strong_amalgam = [&](const std::vector<std::size_t>& chosen) {
    std::vector<std::size_t> parent(c + d);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::vector<bool> covered(c + d, false);
    for (auto k : chosen) {
      auto [i, j] = pairs[k];
      covered[i] = covered[c + j] = true;
      parent[find(i)] = find(c + j);
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool v) { return v; })) return false;
    // Images meet exactly in B iff each fiber over an atom of B is one component.
    std::vector<std::optional<std::size_t>> root_of_fiber(inst.b);
    for (std::size_t v = 0; v < c + d; ++v) {
      auto fiber = v < c ? inst.c_over_b[v] : inst.d_over_b[v - c];
      auto root = find(v);
      if (!root_of_fiber[fiber]) root_of_fiber[fiber] = root;
      if (*root_of_fiber[fiber] != root) return false;
    }
    return true;
  };

  for (std::size_t e = std::max(c, d); e <= atom_bound; ++e) {
    std::vector<std::size_t> chosen(e, 0);
    while (true) {
      ++verdict.candidates;
      if (strong_amalgam(chosen)) {
        verdict.found = true;
        verdict.atoms = e;
        for (auto k : chosen) verdict.atom_pairs.push_back(pairs[k]);
        return verdict;
      }
      // Next nondecreasing sequence over pair indices.
      std::size_t pos = e;
      while (pos > 0 && chosen[pos - 1] + 1 == pairs.size()) --pos;
      if (pos == 0) break;
      ++chosen[pos - 1];
      for (auto k = pos; k < e; ++k) chosen[k] = chosen[pos - 1];
    }
  }
  return verdict;
}

bool verify_boolean_witness(const BooleanInstance& inst, const BooleanVerdict& verdict) {
  if (!verdict.found) return false;
  const auto c = inst.c_over_b.size();
  const auto d = inst.d_over_b.size();
  const auto e = verdict.atom_pairs.size();
  if (c > 20 || d > 20 || e > 63) return false;
  // Elements are atom masks; psi'(X) is the set of E-atoms below some atom in X.
  auto image_c = [&](std::uint64_t x) {
    std::uint64_t u = 0;
    for (std::size_t k = 0; k < e; ++k)
      if (x >> verdict.atom_pairs[k].first & 1) u |= std::uint64_t{1} << k;
    return u;
  };
  auto image_d = [&](std::uint64_t y) {
    std::uint64_t u = 0;
    for (std::size_t k = 0; k < e; ++k)
      if (y >> verdict.atom_pairs[k].second & 1) u |= std::uint64_t{1} << k;
    return u;
  };
  auto lift = [&](std::uint64_t z, const std::vector<std::size_t>& over) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < over.size(); ++i)
      if (z >> over[i] & 1) x |= std::uint64_t{1} << i;
    return x;
  };
  std::set<std::uint64_t> c_image, d_image, b_image;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << c); ++x) c_image.insert(image_c(x));
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << d); ++y) d_image.insert(image_d(y));
  if (c_image.size() != (std::uint64_t{1} << c) || d_image.size() != (std::uint64_t{1} << d)) return false;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << inst.b); ++z) {
    auto via_c = image_c(lift(z, inst.c_over_b));
    if (via_c != image_d(lift(z, inst.d_over_b))) return false;
    b_image.insert(via_c);
  }
  std::set<std::uint64_t> meet;
  for (auto u : c_image)
    if (d_image.contains(u)) meet.insert(u);
  return meet == b_image;
}

namespace {

/// Labeled compositions of `total` atoms into `parts` nonempty blocks, as atom -> block maps.
std::vector<std::vector<std::size_t>> fiber_maps(std::size_t parts, std::size_t total) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> sizes;
  std::function<void(std::size_t)> rec = [&](std::size_t left) {
    if (sizes.size() == parts) {
      if (left != 0) return;
      std::vector<std::size_t> map;
      for (std::size_t p = 0; p < parts; ++p) map.insert(map.end(), sizes[p], p);
      out.push_back(std::move(map));
      return;
    }
    for (std::size_t s = 1; s + (parts - sizes.size() - 1) <= left; ++s) {
      sizes.push_back(s);
      rec(left - s);
      sizes.pop_back();
    }
  };
  rec(total);
  return out;
}

std::size_t floor_log2(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= v) ++k;
  return k;
}

std::string describe_boolean(const BooleanInstance& inst) {
  return "B=2^" + std::to_string(inst.b) + " C-fibers=" + describe_map(inst.c_over_b) +
         " D-fibers=" + describe_map(inst.d_over_b);
}

bool strong_over_boolean(std::size_t b, std::size_t limit_atoms, std::size_t atom_bound,
                         ClassReport* report) {
  bool all = true;
  for (std::size_t c = b; c <= limit_atoms; ++c)
    for (const auto& cf : fiber_maps(b, c))
      for (std::size_t d = b; d <= limit_atoms; ++d)
        for (const auto& df : fiber_maps(b, d)) {
          BooleanInstance inst{b, cf, df};
          auto v = check_boolean_instance(inst, atom_bound);
          if (report) {
            ++report->instances;
            if (v.found) {
              ++report->amalgamated;
              ++report->strongly_amalgamated;
            } else if (!report->counterexample) {
              report->counterexample = describe_boolean(inst);
            }
          }
          if (!v.found) all = false;
        }
  return all;
}

}  // namespace

ClassReport check_sap_boolean(std::size_t max_elements, std::size_t atom_bound) {
  ClassReport report;
  report.class_name = "boolean-algebras";
  report.max_size = max_elements;
  report.bound = atom_bound;
  auto atoms = floor_log2(max_elements);
  for (std::size_t b = 1; b <= atoms; ++b) strong_over_boolean(b, atoms, atom_bound, &report);
  report.note = "algebras with at most " + std::to_string(atoms) + " atoms; amalgams up to " +
                std::to_string(atom_bound) + " atoms";
  return report;
}

CsapReport check_csap_boolean(std::size_t max_elements, std::size_t atom_bound) {
  CsapReport report;
  report.class_name = "boolean-algebras";
  report.max_size = max_elements;
  report.bound = atom_bound;
  auto atoms = floor_log2(max_elements);
  for (std::size_t b = 1; b <= atoms; ++b) {
    CsapEntry entry{"2^" + std::to_string(b), std::nullopt};
    if (strong_over_boolean(b, std::max(atoms, b + 1), atom_bound, nullptr)) entry.witness = entry.base;
    report.entries.push_back(std::move(entry));
  }
  report.note = "B = B0, a finite algebra being its own generated closure";
  return report;
}

// ---- Integer distances ----

namespace {

using IntSet = std::vector<std::int64_t>;

IntSet normalize(IntSet s) {
  if (s.empty()) return s;
  std::sort(s.begin(), s.end());
  auto lo = s.front(), hi = s.back();
  IntSet up, down;
  for (auto v : s) up.push_back(v - lo);
  for (auto v : s) down.push_back(hi - v);
  std::sort(down.begin(), down.end());
  return std::min(up, down);
}

std::vector<IntSet> integer_reps(std::size_t n, std::int64_t window) {
  std::set<IntSet> seen;
  std::vector<IntSet> out{IntSet{}};
  std::function<void(IntSet&, std::int64_t)> rec = [&](IntSet& s, std::int64_t next) {
    if (!s.empty()) {
      auto norm = normalize(s);
      if (seen.insert(norm).second) out.push_back(norm);
    }
    if (s.size() == n) return;
    for (auto v = next; v < window; ++v) {
      s.push_back(v);
      rec(s, v + 1);
      s.pop_back();
    }
  };
  IntSet start{0};
  rec(start, 1);
  std::stable_sort(out.begin(), out.end(), [](const IntSet& a, const IntSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// Distance-preserving injections B -> C as image lists.
std::vector<IntSet> isometric_maps(const IntSet& B, const IntSet& C) {
  std::vector<IntSet> out;
  if (B.empty()) return {IntSet{}};
  std::set<IntSet> seen;
  for (int sign : {1, -1})
    for (auto c0 : C) {
      IntSet image;
      bool ok = true;
      for (auto b : B) {
        auto v = sign * (b - B.front()) + c0;
        if (!std::binary_search(C.begin(), C.end(), v)) {
          ok = false;
          break;
        }
        image.push_back(v);
      }
      if (ok && seen.insert(image).second) out.push_back(image);
    }
  return out;
}

/// Some isometry g of Z with g(chi(b)) = psi(b) has C meeting g(D) exactly in psi(B).
bool integer_strong(const IntSet& C, const IntSet& D, const IntSet& psi, const IntSet& chi) {
  if (psi.empty()) return true;  // translate D far away
  for (std::int64_t sign : {1, -1}) {
    auto shift = psi[0] - sign * chi[0];
    bool fits = true;
    for (std::size_t k = 0; k < psi.size(); ++k)
      if (sign * chi[k] + shift != psi[k]) fits = false;
    if (!fits) continue;
    std::set<std::int64_t> meet;
    for (auto y : D) {
      auto v = sign * y + shift;
      if (std::binary_search(C.begin(), C.end(), v)) meet.insert(v);
    }
    if (meet == std::set<std::int64_t>(psi.begin(), psi.end())) return true;
  }
  return false;
}

std::string describe_ints(const IntSet& s) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << s[k];
  out << "}";
  return out.str();
}

bool strong_over_integer_base(const IntSet& B, const std::vector<IntSet>& reps, std::size_t limit,
                              ClassReport* report) {
  bool all = true;
  for (const auto& C : reps) {
    if (C.size() < B.size() || C.size() > limit) continue;
    auto psis = isometric_maps(B, C);
    for (const auto& D : reps) {
      if (D.size() < B.size() || D.size() > limit) continue;
      auto chis = isometric_maps(B, D);
      for (const auto& psi : psis)
        for (const auto& chi : chis) {
          bool ok = integer_strong(C, D, psi, chi);
          if (report) {
            ++report->instances;
            ++report->amalgamated;  // C + g(D) is always an amalgam inside Z
            if (ok) {
              ++report->strongly_amalgamated;
            } else if (!report->counterexample) {
              report->counterexample = "B" + describe_ints(B) + " C" + describe_ints(C) + " D" +
                                       describe_ints(D) + " psi" + describe_ints(psi) + " chi" +
                                       describe_ints(chi);
            }
          }
          if (!ok) all = false;
        }
    }
  }
  return all;
}

}  // namespace

ClassReport check_sap_integer_distance(std::size_t n, std::int64_t window) {
  ClassReport report;
  report.class_name = "integer-distance";
  report.max_size = n;
  report.bound = static_cast<std::size_t>(window);
  auto reps = integer_reps(n, window);
  for (const auto& B : reps) strong_over_integer_base(B, reps, n, &report);
  report.note = "finite sets of integers up to isometry, inside [0, " + std::to_string(window) + ")";
  return report;
}

CsapReport check_csap_integer_distance(std::size_t n, std::size_t bound, std::int64_t window) {
  CsapReport report;
  report.class_name = "integer-distance";
  report.max_size = n;
  report.bound = bound;
  auto reps = integer_reps(std::max(n, bound + 1), window);
  for (const auto& B0 : reps) {
    if (B0.size() > n) continue;
    CsapEntry entry{describe_ints(B0), std::nullopt};
    for (const auto& B : reps) {
      if (B.size() < B0.size() || B.size() > bound) continue;
      if (isometric_maps(B0, B).empty()) continue;
      if (strong_over_integer_base(B, reps, std::max(n, B.size() + 1), nullptr)) {
        entry.witness = describe_ints(B);
        break;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  report.note = "sets inside [0, " + std::to_string(window) + ")";
  return report;
}

// ---- Schmerl cross-check ----

SchmerlReport schmerl_cross_check(const CountableStructure& s, std::size_t n) {
  SchmerlReport out;
  out.structure = s.name();
  ClassReport sap;
  switch (s.kind()) {
    case StructureKind::RandomGraph: sap = check_sap_class(graph_class(), n); break;
    case StructureKind::RationalOrder: sap = check_sap_class(linear_order_class(), n); break;
    case StructureKind::PureSet: sap = check_sap_class(pure_set_class(), n); break;
    case StructureKind::AtomlessBoolean: sap = check_sap_boolean(std::size_t{1} << n, 2 * n); break;
    case StructureKind::IntegerDistance:
      sap = check_sap_integer_distance(n, static_cast<std::int64_t>(2 * n + 4));
      break;
    default: throw Unsupported("no finite class model for " + s.name());
  }
  out.class_name = sap.class_name;
  out.sap_pass = sap.passed();

  out.no_algebraicity = true;
  std::ostringstream detail;
  const std::uint64_t probe = n + 3;
  std::optional<std::string> witness;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << probe); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > n) continue;
    PointSet F;
    for (std::uint64_t k = 0; k < probe; ++k)
      if (mask >> k & 1) F.push_back(Point{k});
    auto closure = s.acl(F);
    if (!closure.exact) out.acl_trusted = false;
    if (closure.points != F) {
      out.no_algebraicity = false;
      if (!witness) witness = "acl(" + to_string(F) + ") = " + to_string(closure.points);
      break;
    }
  }
  out.consistent = out.sap_pass == out.no_algebraicity;
  detail << sap.class_name << " SAP " << (out.sap_pass ? "pass" : "fail") << " over "
         << sap.instances << " instances";
  if (sap.counterexample) detail << " (first failure " << *sap.counterexample << ")";
  detail << "; " << (out.no_algebraicity ? "no algebraicity" : "algebraicity: " + witness.value_or(""));
  if (!out.acl_trusted) detail << "; acl untrusted (fallback or truncated)";
  if (!out.consistent) detail << "; DISAGREEMENT";
  out.detail = detail.str();
  return out;
}

}  // namespace fraisse

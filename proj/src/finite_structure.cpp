#include "fraisse/finite_structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fraisse {
namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) out *= base;
  return out;
}

std::vector<std::size_t> decode_tuple(std::size_t index, std::size_t size, std::size_t arity) {
  std::vector<std::size_t> tuple(arity);
  for (std::size_t k = arity; k-- > 0;) {
    tuple[k] = index % size;
    index /= size;
  }
  return tuple;
}

Truth literal_truth(const Literal& lit, const std::vector<std::size_t>& assignment,
                    const TruthLookup& lookup) {
  std::vector<std::size_t> tuple(lit.vars.size());
  for (std::size_t k = 0; k < lit.vars.size(); ++k) tuple[k] = assignment[lit.vars[k]];
  auto t = lookup(lit.relation, tuple);
  if (t == Truth::Unknown || !lit.negated) return t;
  return t == Truth::True ? Truth::False : Truth::True;
}

/// Calls visit on every injective assignment of `vars` variables; stops when visit returns false.
bool for_each_injection(std::size_t vars, std::size_t size,
                        const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (vars > size) return true;
  std::vector<std::size_t> assignment(vars);
  std::vector<bool> used(size, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == vars) return visit(assignment);
    for (std::size_t v = 0; v < size; ++v) {
      if (used[v]) continue;
      used[v] = true;
      assignment[depth] = v;
      bool go_on = rec(depth + 1);
      used[v] = false;
      if (!go_on) return false;
    }
    return true;
  };
  return rec(0);
}

ClassSpec binary_class(std::string name, const std::vector<std::string>& forbid) {
  ClassSpec cls;
  cls.name = std::move(name);
  cls.signature.relations.push_back({"E", 2});
  for (const auto& text : forbid) cls.forbid.push_back(parse_template(text, cls.signature));
  return cls;
}

}  // namespace

FiniteStructure::FiniteStructure(Signature signature, std::size_t size)
    : signature_(std::move(signature)), size_(size) {
  for (const auto& r : signature_.relations) tables_.emplace_back(power(size_, r.arity), 0);
}

std::size_t FiniteStructure::tuple_index(std::size_t relation,
                                         const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != signature_.relations.at(relation).arity)
    throw std::invalid_argument("tuple length does not match the relation arity");
  std::size_t index = 0;
  for (auto v : tuple) {
    if (v >= size_) throw std::out_of_range("tuple entry outside the structure");
    index = index * size_ + v;
  }
  return index;
}

bool FiniteStructure::holds(std::size_t relation, const std::vector<std::size_t>& tuple) const {
  return tables_[relation][tuple_index(relation, tuple)] != 0;
}

void FiniteStructure::set(std::size_t relation, const std::vector<std::size_t>& tuple, bool value) {
  tables_[relation][tuple_index(relation, tuple)] = value ? 1 : 0;
}

FiniteStructure FiniteStructure::relabel(const std::vector<std::size_t>& perm) const {
  FiniteStructure out(signature_, size_);
  for (std::size_t r = 0; r < tables_.size(); ++r) {
    auto arity = signature_.relations[r].arity;
    for (std::size_t idx = 0; idx < tables_[r].size(); ++idx) {
      if (!tables_[r][idx]) continue;
      auto tuple = decode_tuple(idx, size_, arity);
      for (auto& v : tuple) v = perm[v];
      out.set(r, tuple, true);
    }
  }
  return out;
}

FiniteStructure FiniteStructure::induced(const std::vector<std::size_t>& points) const {
  FiniteStructure out(signature_, points.size());
  for (std::size_t r = 0; r < tables_.size(); ++r) {
    auto arity = signature_.relations[r].arity;
    for (std::size_t idx = 0; idx < out.tables_[r].size(); ++idx) {
      auto tuple = decode_tuple(idx, points.size(), arity);
      std::vector<std::size_t> original(arity);
      for (std::size_t k = 0; k < arity; ++k) original[k] = points[tuple[k]];
      out.tables_[r][idx] = holds(r, original) ? 1 : 0;
    }
  }
  return out;
}

std::vector<std::uint8_t> FiniteStructure::encoding() const {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(size_));
  for (const auto& t : tables_) out.insert(out.end(), t.begin(), t.end());
  return out;
}

std::vector<std::uint8_t> FiniteStructure::canonical_form() const {
  if (size_ > kCanonicalLimit)
    throw std::invalid_argument("canonical form is limited to " + std::to_string(kCanonicalLimit) +
                                " points");
  std::vector<std::size_t> perm(size_);
  std::iota(perm.begin(), perm.end(), 0);
  auto best = encoding();
  do {
    auto e = relabel(perm).encoding();
    if (e < best) best = std::move(e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::uint64_t FiniteStructure::canonical_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto byte : canonical_form()) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string FiniteStructure::describe() const {
  std::ostringstream out;
  out << "n=" << size_;
  for (std::size_t r = 0; r < tables_.size(); ++r) {
    out << " " << signature_.relations[r].name << "={";
    bool first = true;
    for (std::size_t idx = 0; idx < tables_[r].size(); ++idx) {
      if (!tables_[r][idx]) continue;
      auto tuple = decode_tuple(idx, size_, signature_.relations[r].arity);
      out << (first ? "" : ",") << "(";
      for (std::size_t k = 0; k < tuple.size(); ++k) out << (k ? " " : "") << tuple[k];
      out << ")";
      first = false;
    }
    out << "}";
  }
  return out.str();
}

bool may_satisfy(const ClassSpec& cls, std::size_t size, const TruthLookup& lookup) {
  auto check = [&](const AxiomTemplate& axiom, bool forbid) {
    return for_each_injection(axiom.variables.size(), size, [&](const std::vector<std::size_t>& a) {
      bool all_true = true;
      for (const auto& lit : axiom.literals) {
        auto t = literal_truth(lit, a, lookup);
        if (forbid && t != Truth::True) {
          all_true = false;
          break;
        }
        if (!forbid && t == Truth::False) return false;
      }
      return !(forbid && all_true);
    });
  };
  for (const auto& axiom : cls.forbid)
    if (!check(axiom, true)) return false;
  for (const auto& axiom : cls.require)
    if (!check(axiom, false)) return false;
  return true;
}

bool satisfies(const ClassSpec& cls, const FiniteStructure& s) {
  return may_satisfy(cls, s.size(), [&](std::size_t r, const std::vector<std::size_t>& t) {
    return s.holds(r, t) ? Truth::True : Truth::False;
  });
}

ClassSpec graph_class() { return binary_class("graphs", {"E(a,a)", "E(a,b) & !E(b,a)"}); }

ClassSpec linear_order_class() {
  return binary_class("linear-orders", {"E(a,a)", "E(a,b) & E(b,a)", "!E(a,b) & !E(b,a)",
                                        "E(a,b) & E(b,c) & !E(a,c)"});
}

ClassSpec pure_set_class() {
  ClassSpec cls;
  cls.name = "pure-sets";
  return cls;
}

std::vector<FiniteStructure> enumerate_structures(const ClassSpec& cls, std::size_t max_size,
                                                  bool include_empty, std::uint64_t budget) {
  std::vector<FiniteStructure> out;
  std::uint64_t nodes = 0;
  for (std::size_t m = include_empty ? 0 : 1; m <= max_size; ++m) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // (relation, tuple index)
    std::vector<std::vector<std::int8_t>> partial;
    for (std::size_t r = 0; r < cls.signature.relations.size(); ++r) {
      auto count = power(m, cls.signature.relations[r].arity);
      partial.emplace_back(count, -1);
      for (std::size_t idx = 0; idx < count; ++idx) cells.emplace_back(r, idx);
    }
    auto lookup = [&](std::size_t r, const std::vector<std::size_t>& tuple) {
      std::size_t idx = 0;
      for (auto v : tuple) idx = idx * m + v;
      auto v = partial[r][idx];
      return v < 0 ? Truth::Unknown : (v ? Truth::True : Truth::False);
    };
    std::map<std::vector<std::uint8_t>, FiniteStructure> found;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (++nodes > budget)
        throw BudgetExceeded("structure enumeration exceeded " + std::to_string(budget) + " nodes");
      if (!may_satisfy(cls, m, lookup)) return;
      if (depth == cells.size()) {
        FiniteStructure s(cls.signature, m);
        for (std::size_t r = 0; r < partial.size(); ++r)
          for (std::size_t idx = 0; idx < partial[r].size(); ++idx)
            s.table(r)[idx] = static_cast<std::uint8_t>(partial[r][idx]);
        auto key = s.canonical_form();
        if (!found.contains(key)) {
          // Rebuild in canonical labeling so equal classes give equal representatives.
          std::vector<std::size_t> perm(m);
          std::iota(perm.begin(), perm.end(), 0);
          do {
            auto candidate = s.relabel(perm);
            if (candidate.encoding() == key) {
              found.emplace(key, std::move(candidate));
              break;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return;
      }
      auto [r, idx] = cells[depth];
      for (std::int8_t v : {0, 1}) {
        partial[r][idx] = v;
        rec(depth + 1);
      }
      partial[r][idx] = -1;
    };
    rec(0);
    for (auto& [key, s] : found) out.push_back(std::move(s));
  }
  return out;
}

bool is_embedding(const FiniteStructure& from, const FiniteStructure& to,
                  const std::vector<std::size_t>& map) {
  if (map.size() != from.size()) return false;
  std::set<std::size_t> seen(map.begin(), map.end());
  if (seen.size() != map.size()) return false;
  for (auto v : map)
    if (v >= to.size()) return false;
  for (std::size_t r = 0; r < from.signature().relations.size(); ++r) {
    auto arity = from.signature().relations[r].arity;
    for (std::size_t idx = 0; idx < from.table(r).size(); ++idx) {
      auto tuple = decode_tuple(idx, from.size(), arity);
      for (auto& v : tuple) v = map[v];
      if ((from.table(r)[idx] != 0) != to.holds(r, tuple)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> embeddings(const FiniteStructure& from,
                                                 const FiniteStructure& to) {
  std::vector<std::vector<std::size_t>> out;
  if (from.size() > to.size()) return out;
  std::vector<std::size_t> map;
  std::vector<bool> used(to.size(), false);
  std::function<void()> rec = [&]() {
    if (map.size() == from.size()) {
      if (is_embedding(from, to, map)) out.push_back(map);
      return;
    }
    for (std::size_t v = 0; v < to.size(); ++v) {
      if (used[v]) continue;
      used[v] = true;
      map.push_back(v);
      // Prune on the induced substructure of the points mapped so far.
      std::vector<std::size_t> prefix(map.size());
      std::iota(prefix.begin(), prefix.end(), 0);
      if (is_embedding(from.induced(prefix), to, map)) rec();
      map.pop_back();
      used[v] = false;
    }
  };
  rec();
  return out;
}

}  // namespace fraisse

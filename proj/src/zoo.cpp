#include "fraisse/zoo.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

namespace fraisse::zoo {
namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::size_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    out *= base;
    if (out > cap) throw CapExceededError("group order exceeds cap " + std::to_string(cap));
  }
  return out;
}

void check_cap(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw CapExceededError(g.name() + " has order " + std::to_string(g.order()) + " > cap " +
                           std::to_string(cap));
}

ClassPartition sorted_partition(std::size_t order, std::vector<std::vector<Element>> classes) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end());
  return ClassPartition{order, std::move(classes)};
}

std::uint64_t parse_count(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + text + "' in group spec '" + spec + "'");
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::size_t order, Multiply mul, Invert inv,
                         std::vector<Element> generators, Label label)
    : name_(std::move(name)),
      order_(order),
      mul_(std::move(mul)),
      inv_(std::move(inv)),
      generators_(std::move(generators)),
      label_(std::move(label)) {
  if (order_ == 0) throw std::invalid_argument("a group has at least one element");
}

std::size_t AbelianCarrier::size() const {
  return checked_power(modulus, rank, kDefaultGroupCap);
}

Element AbelianCarrier::add(Element a, Element b) const {
  Element out = 0, scale = 1;
  for (std::uint32_t k = 0; k < rank; ++k) {
    out += ((a % modulus + b % modulus) % modulus) * scale;
    a /= modulus;
    b /= modulus;
    scale *= modulus;
  }
  return out;
}

Element AbelianCarrier::negate(Element a) const {
  Element out = 0, scale = 1;
  for (std::uint32_t k = 0; k < rank; ++k) {
    out += ((modulus - a % modulus) % modulus) * scale;
    a /= modulus;
    scale *= modulus;
  }
  return out;
}

Element AbelianCarrier::twice(Element a) const { return add(a, a); }

std::optional<Element> AbelianCarrier::half(Element a) const {
  Element out = 0, scale = 1;
  for (std::uint32_t k = 0; k < rank; ++k) {
    auto digit = a % modulus;
    std::optional<Element> root;
    for (Element x = 0; x < modulus && !root; ++x)
      if ((2 * x) % modulus == digit) root = x;
    if (!root) return std::nullopt;
    out += *root * scale;
    a /= modulus;
    scale *= modulus;
  }
  return out;
}

std::string AbelianCarrier::label(Element a) const {
  std::string out = "(";
  for (std::uint32_t k = 0; k < rank; ++k) {
    out += (k ? "," : "") + std::to_string(a % modulus);
    a /= modulus;
  }
  return out + ")";
}

std::string AbelianCarrier::name() const {
  return "Z" + std::to_string(modulus) + "^" + std::to_string(rank);
}

FiniteGroup cyclic(std::size_t n) {
  return FiniteGroup(
      "Z" + std::to_string(n), n, [n](Element a, Element b) { return static_cast<Element>((a + b) % n); },
      [n](Element a) { return static_cast<Element>((n - a) % n); },
      n > 1 ? std::vector<Element>{1} : std::vector<Element>{},
      [](Element a) { return std::to_string(a); });
}

FiniteGroup symmetric(std::size_t k) {
  if (k > 8) throw CapExceededError("Sym(k) is limited to k <= 8");
  auto perms = std::make_shared<std::vector<std::vector<std::uint8_t>>>();
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms->push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  // Lexicographic rank, so the identity is element 0.
  auto rank = [k](const std::vector<std::uint8_t>& q) {
    Element r = 0;
    for (std::size_t i = 0; i < k; ++i) {
      Element smaller = 0;
      for (std::size_t j = i + 1; j < k; ++j)
        if (q[j] < q[i]) ++smaller;
      r = static_cast<Element>(r * (k - i) + smaller);
    }
    return r;
  };
  auto mul = [perms, rank, k](Element a, Element b) {
    const auto& pa = (*perms)[a];
    const auto& pb = (*perms)[b];
    std::vector<std::uint8_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = pb[pa[i]];  // apply a, then b
    return rank(out);
  };
  auto inv = [perms, rank, k](Element a) {
    const auto& pa = (*perms)[a];
    std::vector<std::uint8_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[pa[i]] = static_cast<std::uint8_t>(i);
    return rank(out);
  };
  std::vector<Element> gens;
  if (k >= 2) {
    std::vector<std::uint8_t> swap01(k), cycle(k);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (std::size_t i = 0; i < k; ++i) cycle[i] = static_cast<std::uint8_t>((i + 1) % k);
    gens = {rank(swap01), rank(cycle)};
  }
  auto label = [perms](Element a) {
    std::string out = "[";
    for (auto v : (*perms)[a]) out += std::to_string(v);
    return out + "]";
  };
  return FiniteGroup("Sym" + std::to_string(k), perms->size(), mul, inv, gens, label);
}

FiniteGroup semidirect(const AbelianCarrier& carrier) {
  const auto n = static_cast<Element>(carrier.size());
  auto mul = [carrier, n](Element x, Element y) {
    Element i = x / n, a = x % n, j = y / n, b = y % n;
    Element twisted = i ? carrier.negate(b) : b;
    return ((i + j) % 2) * n + carrier.add(a, twisted);
  };
  auto inv = [carrier, n](Element x) {
    Element i = x / n, a = x % n;
    return i ? x : carrier.negate(a);  // (1,b) is an involution
  };
  std::vector<Element> gens{n};  // (1,0)
  Element unit = 1;
  for (std::uint32_t k = 0; k < carrier.rank; ++k, unit *= carrier.modulus) gens.push_back(unit);
  auto label = [carrier, n](Element x) {
    return "(" + std::to_string(x / n) + "," + carrier.label(x % n) + ")";
  };
  return FiniteGroup("Z2x|" + carrier.name(), 2 * static_cast<std::size_t>(n), mul, inv, gens, label);
}

FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
  const auto m = static_cast<Element>(h.order());
  auto gp = std::make_shared<FiniteGroup>(g);
  auto hp = std::make_shared<FiniteGroup>(h);
  auto mul = [gp, hp, m](Element x, Element y) {
    return gp->mul(x / m, y / m) * m + hp->mul(x % m, y % m);
  };
  auto inv = [gp, hp, m](Element x) { return gp->inv(x / m) * m + hp->inv(x % m); };
  std::vector<Element> gens;
  for (auto a : g.generators()) gens.push_back(a * m);
  for (auto b : h.generators()) gens.push_back(b);
  auto label = [gp, hp, m](Element x) { return "<" + gp->label(x / m) + "," + hp->label(x % m) + ">"; };
  if (static_cast<std::uint64_t>(g.order()) * h.order() > (std::uint64_t{1} << 31))
    throw CapExceededError("product order does not fit the element type");
  return FiniteGroup(g.name() + "*" + h.name(), g.order() * h.order(), mul, inv, gens, label);
}

FiniteGroup from_table(std::string name, std::vector<std::vector<Element>> table) {
  const auto n = table.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw std::invalid_argument("multiplication table is not square");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw std::invalid_argument("table entry out of range");
      if (a == 0 && table[a][b] != b) throw std::invalid_argument("element 0 must be the identity");
      if (b == 0 && table[a][b] != a) throw std::invalid_argument("element 0 must be the identity");
    }
  }
  auto shared = std::make_shared<std::vector<std::vector<Element>>>(std::move(table));
  auto inverses = std::make_shared<std::vector<Element>>(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = std::find((*shared)[a].begin(), (*shared)[a].end(), 0u);
    if (it == (*shared)[a].end()) throw std::invalid_argument("element without inverse");
    (*inverses)[a] = static_cast<Element>(it - (*shared)[a].begin());
  }
  std::vector<Element> gens(n > 1 ? n - 1 : 0);
  std::iota(gens.begin(), gens.end(), 1);
  return FiniteGroup(
      std::move(name), n, [shared](Element a, Element b) { return (*shared)[a][b]; },
      [inverses](Element a) { return (*inverses)[a]; }, gens,
      [](Element a) { return std::to_string(a); });
}

FiniteGroup named_group(const std::string& spec) {
  if (auto star = spec.find('*'); star != std::string::npos)
    return product(named_group(spec.substr(0, star)), named_group(spec.substr(star + 1)));
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty group spec");
  const auto& kind = parts[0];
  auto arg = [&](std::size_t k) {
    if (parts.size() <= k) throw std::invalid_argument("group spec '" + spec + "' is missing an argument");
    return parse_count(parts[k], spec);
  };
  if (kind == "cyclic") return cyclic(arg(1));
  if (kind == "sym") return symmetric(arg(1));
  if (kind == "z2_semidirect_z3pow") return semidirect({3, static_cast<std::uint32_t>(arg(1))});
  if (kind == "z2_semidirect_z2pow") return semidirect({2, static_cast<std::uint32_t>(arg(1))});
  if (kind == "z2_semidirect_zmpow")
    return semidirect({static_cast<std::uint32_t>(arg(1)), static_cast<std::uint32_t>(arg(2))});
  throw std::invalid_argument("unknown group constructor '" + kind + "'");
}

FiniteGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group file " + path);
  std::string line;
  if (!std::getline(in, line) || line != "fraisse-group v1")
    throw std::invalid_argument(path + ": expected header 'fraisse-group v1'");
  std::string name = path;
  std::vector<std::vector<Element>> table;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    if (line.rfind("name ", 0) == 0) {
      name = line.substr(5);
      continue;
    }
    std::vector<Element> entries;
    for (long long v; row >> v;) {
      if (v < 0) throw std::invalid_argument(path + ": negative table entry");
      entries.push_back(static_cast<Element>(v));
    }
    table.push_back(std::move(entries));
  }
  return from_table(name, std::move(table));
}

ClassPartition conjugacy_classes(const FiniteGroup& g, std::size_t cap) {
  check_cap(g, cap);
  std::vector<bool> assigned(g.order(), false);
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (assigned[x]) continue;
    std::vector<Element> cls;
    for (Element h = 0; h < g.order(); ++h) {
      auto y = g.conjugate(x, h);
      if (!assigned[y]) {
        assigned[y] = true;
        cls.push_back(y);
      }
    }
    classes.push_back(std::move(cls));
  }
  return sorted_partition(g.order(), std::move(classes));
}

ClassPartition conjugacy_classes_parallel(const FiniteGroup& g, std::size_t cap) {
  check_cap(g, cap);
  const auto n = static_cast<std::int64_t>(g.order());
  std::vector<bool> assigned(g.order(), false);
  std::vector<Element> images(g.order());
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (assigned[x]) continue;
#pragma omp parallel for schedule(static)
    for (std::int64_t h = 0; h < n; ++h) images[h] = g.conjugate(x, static_cast<Element>(h));
    std::vector<Element> cls;
    for (auto y : images) {
      if (!assigned[y]) {
        assigned[y] = true;
        cls.push_back(y);
      }
    }
    classes.push_back(std::move(cls));
  }
  return sorted_partition(g.order(), std::move(classes));
}

ClassPartition conjugacy_classes_by_generators(const FiniteGroup& g, std::size_t cap) {
  check_cap(g, cap);
  std::vector<bool> assigned(g.order(), false);
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (assigned[x]) continue;
    std::vector<Element> cls{x};
    assigned[x] = true;
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (auto s : g.generators()) {
        auto y = g.conjugate(cls[k], s);
        if (!assigned[y]) {
          assigned[y] = true;
          cls.push_back(y);
        }
      }
    classes.push_back(std::move(cls));
  }
  return sorted_partition(g.order(), std::move(classes));
}

bool conjugation_closed(const FiniteGroup& g, const ClassPartition& p) {
  std::vector<std::size_t> class_of(g.order());
  std::size_t covered = 0;
  for (std::size_t c = 0; c < p.classes.size(); ++c)
    for (auto x : p.classes[c]) {
      class_of[x] = c;
      ++covered;
    }
  if (covered != g.order()) return false;
  for (std::size_t c = 0; c < p.classes.size(); ++c)
    for (auto x : p.classes[c])
      for (auto s : g.generators())
        if (class_of[g.conjugate(x, s)] != c) return false;
  return true;
}

ClassPartition product_classes(const ClassPartition& p, const ClassPartition& q) {
  std::vector<std::vector<Element>> classes;
  const auto m = static_cast<Element>(q.group_order);
  for (const auto& c1 : p.classes)
    for (const auto& c2 : q.classes) {
      std::vector<Element> cls;
      for (auto a : c1)
        for (auto b : c2) cls.push_back(a * m + b);
      classes.push_back(std::move(cls));
    }
  return sorted_partition(p.group_order * q.group_order, std::move(classes));
}

SemidirectReport verify_semidirect_proposition(const AbelianCarrier& carrier) {
  SemidirectReport r;
  r.carrier = carrier.name();
  auto group = semidirect(carrier);
  auto classes = conjugacy_classes(group);
  const auto n = static_cast<Element>(carrier.size());
  r.order = group.order();
  r.class_count = classes.classes.size();
  for (Element a = 0; a < n; ++a) {
    if (carrier.negate(a) == a) ++r.self_inverse;
    if (!carrier.half(a)) r.two_divisible = false;
  }
  r.formula = (n - r.self_inverse) / 2 + r.self_inverse + 1;

  std::vector<std::size_t> class_of(group.order());
  for (std::size_t c = 0; c < classes.classes.size(); ++c)
    for (auto x : classes.classes[c]) class_of[x] = c;
  r.zero_classes_ok = true;
  for (Element a = 0; a < n; ++a) {
    std::vector<Element> expected{a, carrier.negate(a)};
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    if (classes.classes[class_of[a]] != expected) r.zero_classes_ok = false;
  }
  r.one_class_ok = classes.classes[class_of[n]].size() == n;
  r.pass = r.two_divisible && r.zero_classes_ok && r.one_class_ok && r.class_count == r.formula;
  if (!r.two_divisible) r.note = "hypothesis fails: some a has no b with 2b = a";
  return r;
}

std::vector<TableRow> table1_rows(std::size_t n) {
  std::vector<TableRow> rows;
  auto measured = [&](std::string row, const FiniteGroup& g, bool truncated, std::string note) {
    auto classes = conjugacy_classes(g);
    std::size_t largest = 0;
    for (const auto& c : classes.classes) largest = std::max(largest, c.size());
    rows.push_back({std::move(row), g.name(), g.order(), classes.classes.size(), largest, truncated,
                    true, std::move(note)});
  };
  measured("Z_n", cyclic(n), false, "abelian: all classes singletons");
  measured("Z", cyclic(n), true, "Z_n stands in for Z");
  measured("Z^omega", product(cyclic(n), cyclic(n)), true, "Z_n^2 stands in for Z^omega");
  measured("Z_n x (Z2 x| Z3^omega)", product(cyclic(n), semidirect({3, 2})), true,
           "Z3^2 stands in for Z3^omega; expected n*((3^2-1)/2+2) classes");
  for (std::size_t k = 3; k <= 5; ++k)
    measured("S_infinity", symmetric(k), true, "Sym(" + std::to_string(k) + ") is illustrative only");
  measured("S_infinity x (Z2 x| Z3^omega)", product(symmetric(4), semidirect({3, 2})), true,
           "Sym(4) and Z3^2 stand-ins");
  rows.push_back({"HNN", "two-class infinite group", std::nullopt, std::nullopt, std::nullopt, true,
                  false, "not constructible at desk scale"});
  return rows;
}

}  // namespace fraisse::zoo

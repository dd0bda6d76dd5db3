#include "fraisse/user_relational.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace fraisse {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Calls fn on every k-tuple of indices into [0, n); stops when fn returns false.
template <typename Fn>
bool for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> t(k, 0);
  if (k > 0 && n == 0) return true;
  for (;;) {
    if (!fn(t)) return false;
    std::size_t pos = 0;
    while (pos < k && ++t[pos] == n) t[pos++] = 0;
    if (pos == k) return true;
  }
}

class ScanStream final : public CandidateStream {
 public:
  ScanStream(const UserRelational& s, PartialAutomorphism p, Point x,
             std::function<bool(const UserRelational&, const PartialAutomorphism&, Point, Point)> ok)
      : structure_(s), map_(std::move(p)), x_(x), ok_(std::move(ok)) {}
  Verdict verdict() const override { return Verdict::Unknown; }
  std::optional<Point> next() override {
    for (; cursor_ < UserRelational::kScanLimit; ++cursor_) {
      Point y{cursor_};
      if (map_.in_range(y)) continue;
      if (ok_(structure_, map_, x_, y)) {
        ++cursor_;
        return y;
      }
    }
    return std::nullopt;
  }

 private:
  const UserRelational& structure_;
  PartialAutomorphism map_;
  Point x_;
  std::function<bool(const UserRelational&, const PartialAutomorphism&, Point, Point)> ok_;
  std::uint64_t cursor_ = 0;
};

}  // namespace

StructureFile parse_structure_file(std::istream& in) {
  StructureFile file;
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> forbid_lines, require_lines;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    auto where = " (line " + std::to_string(line_no) + ")";
    if (!header) {
      if (text != "fraisse-structure v1") throw FormatError("missing 'fraisse-structure v1' header" + where);
      header = true;
      continue;
    }
    auto colon = text.find(':');
    if (colon == std::string::npos) throw FormatError("expected 'key: value'" + where);
    auto key = trim(text.substr(0, colon));
    auto value = trim(text.substr(colon + 1));
    if (key == "name") {
      file.spec.name = value;
    } else if (key == "domain") {
      if (value == "naturals") {
        file.domain = DomainRule::Naturals;
      } else if (value == "integers") {
        file.domain = DomainRule::Integers;
      } else {
        throw FormatError("unknown domain '" + value + "'" + where);
      }
    } else if (key == "relation") {
      std::istringstream fields(value);
      RelationSymbol r;
      if (!(fields >> r.name >> r.arity) || r.arity == 0)
        throw FormatError("expected 'relation: NAME ARITY'" + where);
      file.spec.signature.relations.push_back(r);
    } else if (key == "define") {
      auto eq = value.find('=');
      if (eq == std::string::npos) throw FormatError("expected 'define: NAME = expr'" + where);
      try {
        auto rel = file.spec.signature.index_of(trim(value.substr(0, eq)));
        auto expr = Expression::parse(value.substr(eq + 1));
        if (expr.arity() > file.spec.signature.relations[rel].arity)
          throw FormatError("definition uses more variables than the relation arity" + where);
        file.definitions.emplace_back(rel, std::move(expr));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what() + where);
      } catch (const ExpressionError& e) {
        throw FormatError(e.what() + where);
      }
    } else if (key == "forbid") {
      forbid_lines.emplace_back(line_no, value);
    } else if (key == "require") {
      require_lines.emplace_back(line_no, value);
    } else {
      throw FormatError("unknown key '" + key + "'" + where);
    }
  }
  if (!header) throw FormatError("empty structure file");
  auto parse_all = [&](const auto& lines, auto& out) {
    for (const auto& [no, text] : lines) {
      try {
        out.push_back(parse_template(text, file.spec.signature));
      } catch (const std::invalid_argument& e) {
        throw FormatError(std::string(e.what()) + " (line " + std::to_string(no) + ")");
      }
    }
  };
  parse_all(forbid_lines, file.spec.forbid);
  parse_all(require_lines, file.spec.require);
  if (file.spec.name.empty()) file.spec.name = "user";
  return file;
}

StructureFile load_structure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return parse_structure_file(in);
}

UserRelational::UserRelational(StructureFile file) : file_(std::move(file)) {
  const auto& rels = file_.spec.signature.relations;
  definition_of_.assign(rels.size(), file_.definitions.size());
  for (std::size_t d = 0; d < file_.definitions.size(); ++d) {
    definition_of_[file_.definitions[d].first] = d;
  }
  for (std::size_t r = 0; r < rels.size(); ++r) {
    if (definition_of_[r] == file_.definitions.size())
      throw FormatError("relation '" + rels[r].name + "' has no definition");
  }
}

std::int64_t UserRelational::value(Point p) const {
  if (file_.domain == DomainRule::Naturals) return static_cast<std::int64_t>(p.index);
  auto n = p.index;
  return n % 2 == 1 ? static_cast<std::int64_t>((n + 1) / 2) : -static_cast<std::int64_t>(n / 2);
}

bool UserRelational::holds(std::size_t relation, const std::vector<Point>& tuple) const {
  std::vector<std::int64_t> vars;
  vars.reserve(tuple.size());
  for (auto p : tuple) vars.push_back(value(p));
  return file_.definitions[definition_of_[relation]].second.evaluate(vars) != 0;
}

bool UserRelational::is_partial_automorphism(const PartialAutomorphism& p) const {
  auto pairs = p.pairs();
  const auto& rels = file_.spec.signature.relations;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::vector<Point> src(rels[r].arity), dst(rels[r].arity);
    bool ok = for_each_tuple(pairs.size(), rels[r].arity, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        src[i] = pairs[t[i]].first;
        dst[i] = pairs[t[i]].second;
      }
      return holds(r, src) == holds(r, dst);
    });
    if (!ok) return false;
  }
  return true;
}

bool UserRelational::extends_with(const PartialAutomorphism& p, Point x, Point y) const {
  auto pairs = p.pairs();
  pairs.emplace_back(x, y);
  auto last = pairs.size() - 1;
  const auto& rels = file_.spec.signature.relations;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::vector<Point> src(rels[r].arity), dst(rels[r].arity);
    bool ok = for_each_tuple(pairs.size(), rels[r].arity, [&](const std::vector<std::size_t>& t) {
      if (std::find(t.begin(), t.end(), last) == t.end()) return true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        src[i] = pairs[t[i]].first;
        dst[i] = pairs[t[i]].second;
      }
      return holds(r, src) == holds(r, dst);
    });
    if (!ok) return false;
  }
  return true;
}

AclResult UserRelational::acl(const PointSet& s, std::uint64_t bound) const {
  // x stays out only when at least `bound` same-type peers appear among the first
  // 10*bound points; everything else is kept and reported as inconclusive.
  const std::uint64_t scan = 10 * bound;
  AclResult result{s, false, bound, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t i = 0; i < bound; ++i) {
      Point x{i};
      if (contains(result.points, x)) continue;
      std::uint64_t peers = 0;
      for (std::uint64_t j = 0; j < scan && peers < bound; ++j) {
        Point b{j};
        if (contains(result.points, b)) continue;
        if (same_type_over(result.points, x, b)) ++peers;
      }
      if (peers < bound) {
        insert_point(result.points, x);
        insert_point(result.inconclusive, x);
        changed = true;
      }
    }
  }
  return result;
}

std::unique_ptr<CandidateStream> UserRelational::possible_images(const PartialAutomorphism& p,
                                                                 Point x) const {
  return std::make_unique<ScanStream>(
      *this, p, x, [](const UserRelational& s, const PartialAutomorphism& m, Point a, Point b) {
        return s.extends_with(m, a, b);
      });
}

std::vector<std::string> UserRelational::spot_check_axioms(std::uint64_t prefix) const {
  std::vector<std::string> violations;
  auto check = [&](const AxiomTemplate& t, bool forbid) {
    auto n = static_cast<std::size_t>(prefix);
    for_each_tuple(n, t.variables.size(), [&](const std::vector<std::size_t>& a) {
      auto sorted = a;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return true;
      bool all = std::all_of(t.literals.begin(), t.literals.end(), [&](const Literal& lit) {
        std::vector<Point> tuple;
        for (auto v : lit.vars) tuple.push_back(Point{a[v]});
        return holds(lit.relation, tuple) != lit.negated;
      });
      if (all == forbid) {
        std::string where;
        for (std::size_t v = 0; v < a.size(); ++v) {
          where += (v ? ", " : "") + t.variables[v] + "=" + describe(Point{a[v]});
        }
        violations.push_back((forbid ? "forbid '" : "require '") + t.text + "' fails at " + where);
      }
      return violations.size() < 16;
    });
  };
  for (const auto& t : file_.spec.forbid) check(t, true);
  for (const auto& t : file_.spec.require) check(t, false);
  return violations;
}

}  // namespace fraisse

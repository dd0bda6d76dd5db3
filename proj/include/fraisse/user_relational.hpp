#pragma once

#include <filesystem>
#include <istream>

#include "fraisse/expression.hpp"
#include "fraisse/signature.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainRule { Naturals, Integers };

/// Parsed `fraisse-structure v1` file.
///
///   fraisse-structure v1
///   name: graph
///   domain: naturals            (or integers: index order 0, 1, -1, 2, ...)
///   relation: E 2
///   define: E = x0 != x1 && bit(max(x0, x1), min(x0, x1)) == 1
///   forbid: E(a,a)
///   forbid: E(a,b) & !E(b,a)
///   require: ...
///
/// Lines starting with '#' and blank lines are ignored. `define` lines are only
/// needed when the file is used as a countable structure; the amalgamation
/// checker reads only the signature and the axioms.
struct StructureFile {
  ClassSpec spec;
  DomainRule domain = DomainRule::Naturals;
  std::vector<std::pair<std::size_t, Expression>> definitions;
};

StructureFile parse_structure_file(std::istream& in);
StructureFile load_structure_file(const std::filesystem::path& path);

/// Countable structure defined by integer expressions. Its algebraic closure
/// uses the bounded witness-counting fallback and is never reported exact.
class UserRelational final : public CountableStructure {
 public:
  static constexpr std::uint64_t kScanLimit = std::uint64_t{1} << 20;

  explicit UserRelational(StructureFile file);

  std::int64_t value(Point p) const;
  bool holds(std::size_t relation, const std::vector<Point>& tuple) const;
  const StructureFile& file() const { return file_; }

  StructureKind kind() const override { return StructureKind::UserRelational; }
  std::string name() const override { return file_.spec.name; }
  std::string describe(Point p) const override { return std::to_string(value(p)); }

  bool is_partial_automorphism(const PartialAutomorphism& p) const override;
  bool has_exact_acl() const override { return false; }
  AclResult acl(const PointSet& s, std::uint64_t bound = kDefaultAclBound) const override;
  std::unique_ptr<CandidateStream> possible_images(const PartialAutomorphism& p,
                                                   Point x) const override;

  /// Axiom violations among the first `prefix` points, as human-readable lines.
  std::vector<std::string> spot_check_axioms(std::uint64_t prefix) const;

 private:
  /// Whether p + (x -> y) preserves every relation on tuples that involve x.
  bool extends_with(const PartialAutomorphism& p, Point x, Point y) const;

  StructureFile file_;
  /// Position in file_.definitions for each relation.
  std::vector<std::size_t> definition_of_;
};

}  // namespace fraisse

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraisse::zoo {

using Element = std::uint32_t;

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultGroupCap = 100'000;

/// Explicit finite group on {0, ..., order-1}; element 0 is the identity.
class FiniteGroup {
 public:
  using Multiply = std::function<Element(Element, Element)>;
  using Invert = std::function<Element(Element)>;
  using Label = std::function<std::string(Element)>;

  FiniteGroup(std::string name, std::size_t order, Multiply mul, Invert inv,
              std::vector<Element> generators, Label label);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return mul_(a, b); }
  Element inv(Element a) const { return inv_(a); }
  Element conjugate(Element x, Element g) const { return mul_(mul_(inv_(g), x), g); }
  const std::vector<Element>& generators() const { return generators_; }
  std::string label(Element a) const { return label_(a); }

 private:
  std::string name_;
  std::size_t order_;
  Multiply mul_;
  Invert inv_;
  std::vector<Element> generators_;
  Label label_;
};

/// Abelian carrier (Z_m)^n; m = 3 is Z3^n, m = 2 is Z2^n, odd m > 3 stands in for
/// finite pieces of a uniquely 2-divisible group.
struct AbelianCarrier {
  std::uint32_t modulus = 3;
  std::uint32_t rank = 1;

  std::size_t size() const;
  Element add(Element a, Element b) const;
  Element negate(Element a) const;
  Element twice(Element a) const;
  /// Some b with 2b = a, if one exists.
  std::optional<Element> half(Element a) const;
  std::string label(Element a) const;
  std::string name() const;
};

FiniteGroup cyclic(std::size_t n);
FiniteGroup symmetric(std::size_t k);
/// Z2 x| A with (i,a)(j,b) = (i+j mod 2, a + (-1)^i b); element i*|A| + a.
FiniteGroup semidirect(const AbelianCarrier& carrier);
/// Element g*|H| + h.
FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup from_table(std::string name, std::vector<std::vector<Element>> table);

/// Named constructors: cyclic:n, sym:k, z2_semidirect_z3pow:n, z2_semidirect_z2pow:n,
/// z2_semidirect_zmpow:m:n, and products joined with '*'.
FiniteGroup named_group(const std::string& spec);
/// Text format: first line "fraisse-group v1", then "name <id>", then one row per
/// element of the multiplication table (whitespace-separated indices, identity first).
FiniteGroup load_group_file(const std::string& path);

struct ClassPartition {
  std::size_t group_order = 0;
  /// Each class sorted; classes ordered by least element.
  std::vector<std::vector<Element>> classes;
};

/// Brute force over all conjugators; throws CapExceededError past `cap`.
ClassPartition conjugacy_classes(const FiniteGroup& g, std::size_t cap = kDefaultGroupCap);
/// Same result with the element loop split across OpenMP threads.
ClassPartition conjugacy_classes_parallel(const FiniteGroup& g, std::size_t cap = kDefaultGroupCap);
/// Orbits under conjugation by the generators only.
ClassPartition conjugacy_classes_by_generators(const FiniteGroup& g, std::size_t cap = kDefaultGroupCap);

/// Every class is mapped into itself by conjugation with every generator.
bool conjugation_closed(const FiniteGroup& g, const ClassPartition& p);

/// Classes C1 x C2 in the indexing of product().
ClassPartition product_classes(const ClassPartition& p, const ClassPartition& q);

struct SemidirectReport {
  std::string carrier;
  std::size_t order = 0;
  std::size_t class_count = 0;
  std::size_t self_inverse = 0;
  /// (|A| - s)/2 + s + 1 where s counts a with a = -a.
  std::size_t formula = 0;
  bool two_divisible = true;
  /// class of (0,a) is exactly {(0,a), (0,-a)} for every a.
  bool zero_classes_ok = false;
  /// {1} x A is one class.
  bool one_class_ok = false;
  bool pass = false;
  std::string note;
};

SemidirectReport verify_semidirect_proposition(const AbelianCarrier& carrier);

struct TableRow {
  std::string row;
  std::string group;
  std::optional<std::size_t> order;
  std::optional<std::size_t> class_count;
  std::optional<std::size_t> largest_class;
  /// Finite stand-in for an infinite group.
  bool truncated = false;
  bool constructible = true;
  std::string note;
};

std::vector<TableRow> table1_rows(std::size_t n);

}  // namespace fraisse::zoo

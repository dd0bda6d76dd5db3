#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/signature.hpp"

namespace fraisse {

/// Relational structure on {0, ..., size-1}. Each relation of arity r is a
/// table of size^r truth values indexed in mixed radix, first argument most significant.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Signature signature, std::size_t size);

  std::size_t size() const { return size_; }
  const Signature& signature() const { return signature_; }

  bool holds(std::size_t relation, const std::vector<std::size_t>& tuple) const;
  void set(std::size_t relation, const std::vector<std::size_t>& tuple, bool value);
  std::size_t tuple_index(std::size_t relation, const std::vector<std::size_t>& tuple) const;
  const std::vector<std::uint8_t>& table(std::size_t relation) const { return tables_[relation]; }
  std::vector<std::uint8_t>& table(std::size_t relation) { return tables_[relation]; }

  /// Structure whose point perm[i] carries old point i; perm must be a permutation.
  FiniteStructure relabel(const std::vector<std::size_t>& perm) const;
  /// Substructure on `points`, renumbered in the given order.
  FiniteStructure induced(const std::vector<std::size_t>& points) const;

  /// Concatenated tables; equal encodings mean equal labeled structures.
  std::vector<std::uint8_t> encoding() const;
  /// Lexicographically least encoding over all relabelings; isomorphism-invariant.
  /// Brute force over permutations, so limited to kCanonicalLimit points.
  std::vector<std::uint8_t> canonical_form() const;
  std::uint64_t canonical_hash() const;
  std::string describe() const;

  static constexpr std::size_t kCanonicalLimit = 8;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
    return a.size_ == b.size_ && a.tables_ == b.tables_;
  }

 private:
  Signature signature_;
  std::size_t size_ = 0;
  std::vector<std::vector<std::uint8_t>> tables_;
};

enum class Truth : std::uint8_t { False = 0, True = 1, Unknown = 2 };

/// Three-valued relation lookup used while a structure is only partly decided.
using TruthLookup = std::function<Truth(std::size_t relation, const std::vector<std::size_t>& tuple)>;

/// False only when some axiom is violated under every completion of the unknowns.
bool may_satisfy(const ClassSpec& cls, std::size_t size, const TruthLookup& lookup);
bool satisfies(const ClassSpec& cls, const FiniteStructure& s);

ClassSpec graph_class();
ClassSpec linear_order_class();
ClassSpec pure_set_class();

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One representative per isomorphism class of members with 1..max_size points
/// (0..max_size with include_empty), ordered by size then canonical form.
/// Representatives are in canonical labeling. Throws BudgetExceeded past `budget` search nodes.
std::vector<FiniteStructure> enumerate_structures(const ClassSpec& cls, std::size_t max_size,
                                                  bool include_empty = false,
                                                  std::uint64_t budget = 50'000'000);

/// All injective maps f (f[i] = image of point i) that preserve every relation both ways.
std::vector<std::vector<std::size_t>> embeddings(const FiniteStructure& from, const FiniteStructure& to);

bool is_embedding(const FiniteStructure& from, const FiniteStructure& to,
                  const std::vector<std::size_t>& map);

}  // namespace fraisse

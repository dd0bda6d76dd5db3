#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/finite_structure.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

/// Labeled embeddings psi: B -> C and chi: B -> D between members of a class.
struct AmalgamationInstance {
  FiniteStructure B, C, D;
  std::vector<std::size_t> psi, chi;
};

enum class AmalgamKind { AmalgamFound, StrongAmalgamFound, Counterexample };
std::string to_string(AmalgamKind kind);

struct AmalgamationVerdict {
  AmalgamKind kind = AmalgamKind::Counterexample;
  std::optional<FiniteStructure> E;
  std::vector<std::size_t> psi_prime, chi_prime;
  std::size_t bound = 0;
  std::uint64_t nodes = 0;
};

/// Searches amalgams E with |E| <= bound. The class is universally axiomatized, hence
/// hereditary, so E may be taken to be psi'(C) + chi'(D); larger E restrict to such a
/// one. Strong mode allows no identifications outside B; otherwise identification
/// patterns are tried in order of how many points they merge.
AmalgamationVerdict check_instance(const ClassSpec& cls, const AmalgamationInstance& inst,
                                   bool strong, std::size_t bound);

/// Default bound: |C| + |D| - |B| + 2.
std::size_t default_amalgam_bound(const AmalgamationInstance& inst);

/// Pointwise re-verification of a found amalgam.
bool verify_witness(const ClassSpec& cls, const AmalgamationInstance& inst,
                    const AmalgamationVerdict& verdict, bool strong);

struct ClassReport {
  std::string class_name;
  std::size_t max_size = 0;
  std::size_t bound = 0;
  bool strong = true;
  std::uint64_t instances = 0;
  std::uint64_t amalgamated = 0;
  std::uint64_t strongly_amalgamated = 0;
  std::optional<std::string> counterexample;
  /// False when a budget stopped the sweep early.
  bool complete = true;
  std::string note;

  bool passed() const { return complete && !counterexample; }
};

/// All instances with |B|, |C|, |D| <= n; extra_points is the slack added to
/// |C| + |D| - |B| for the amalgam bound.
ClassReport check_sap_class(const ClassSpec& cls, std::size_t n, bool strong = true,
                            std::size_t extra_points = 2);
/// Same sweep with instances checked in an OpenMP loop; identical report.
ClassReport check_sap_class_parallel(const ClassSpec& cls, std::size_t n, bool strong = true,
                                     std::size_t extra_points = 2);

struct CsapEntry {
  std::string base;
  std::optional<std::string> witness;
};

struct CsapReport {
  std::string class_name;
  std::size_t max_size = 0;
  std::size_t bound = 0;
  std::vector<CsapEntry> entries;
  std::string note;

  bool passed() const;
};

/// For each B0 with |B0| <= n, looks for B (|B| <= bound) receiving B0 such that every
/// instance over B with |C|, |D| <= max(n, |B| + 1) strongly amalgamates.
CsapReport check_csap_class(const ClassSpec& cls, std::size_t n, std::size_t bound);

// Finite Boolean algebras. An algebra with k atoms is 2^k; an embedding of B into C
// is the surjection sending each atom of C to the atom of B above it.

struct BooleanInstance {
  std::size_t b = 1;
  std::vector<std::size_t> c_over_b;
  std::vector<std::size_t> d_over_b;
};

struct BooleanVerdict {
  bool found = false;
  std::size_t atoms = 0;
  /// Atom k of E lies under atom first of C and atom second of D.
  std::vector<std::pair<std::size_t, std::size_t>> atom_pairs;
  std::uint64_t candidates = 0;
  std::size_t bound = 0;
};

/// Exhaustive over amalgams with at most atom_bound atoms, up to isomorphism.
BooleanVerdict check_boolean_instance(const BooleanInstance& inst, std::size_t atom_bound);
/// Element-level check: both embeddings commute over B and the images meet exactly in B.
bool verify_boolean_witness(const BooleanInstance& inst, const BooleanVerdict& verdict);
/// Algebras with at most max_elements elements (so floor(log2) atoms).
ClassReport check_sap_boolean(std::size_t max_elements, std::size_t atom_bound);
/// Witness B = B0, the algebra being its own closure.
CsapReport check_csap_boolean(std::size_t max_elements, std::size_t atom_bound);

// Age of the integers with all distance relations: finite sets of integers up to
// isometry, truncated to sets inside [0, window).

ClassReport check_sap_integer_distance(std::size_t n, std::int64_t window);
CsapReport check_csap_integer_distance(std::size_t n, std::size_t bound, std::int64_t window);

struct SchmerlReport {
  std::string structure;
  std::string class_name;
  bool sap_pass = false;
  bool no_algebraicity = false;
  /// acl came from exact rules throughout.
  bool acl_trusted = true;
  bool consistent = false;
  std::string detail;
};

/// Compares the SAP sweep of the structure's age with acl(F) = F over subsets F of
/// the first n + 3 points with |F| <= n.
SchmerlReport schmerl_cross_check(const CountableStructure& s, std::size_t n);

}  // namespace fraisse

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fraisse {

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;
};

struct Signature {
  std::vector<RelationSymbol> relations;

  /// Index of the named relation; throws std::invalid_argument if absent.
  std::size_t index_of(const std::string& name) const;
};

struct Literal {
  std::size_t relation = 0;
  std::vector<std::size_t> vars;
  bool negated = false;
};

/// Conjunction of relational literals over variables that range over
/// pairwise distinct elements. As a `forbid` axiom no assignment may satisfy
/// it; as a `require` axiom every assignment must.
struct AxiomTemplate {
  std::vector<Literal> literals;
  std::vector<std::string> variables;
  std::string text;
};

/// Parses e.g. "E(a,b) & !E(b,a)" against a signature.
AxiomTemplate parse_template(const std::string& text, const Signature& signature);

/// A hereditary class of finite relational structures given by axioms.
struct ClassSpec {
  std::string name;
  Signature signature;
  std::vector<AxiomTemplate> forbid;
  std::vector<AxiomTemplate> require;
};

}  // namespace fraisse

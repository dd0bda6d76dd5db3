#include "fraisse/boolean_algebra.hpp"
#include "fraisse/integer_distance.hpp"
#include "fraisse/pure_set.hpp"
#include "fraisse/random_graph.hpp"
#include "fraisse/rational_order.hpp"
#include "fraisse/user_relational.hpp"

namespace fraisse {

StructurePtr make_structure(const std::string& name) {
  if (name == "pure-set") return std::make_shared<PureSet>();
  if (name == "random-graph") return std::make_shared<RandomGraph>();
  if (name == "rational-order") return std::make_shared<RationalOrder>();
  if (name == "atomless-boolean") return std::make_shared<AtomlessBoolean>();
  if (name == "integer-distance") return std::make_shared<IntegerDistance>();
  if (name.starts_with("file:")) {
    return std::make_shared<UserRelational>(load_structure_file(name.substr(5)));
  }
  throw std::invalid_argument("unknown structure '" + name +
                              "' (expected a built-in name or file:PATH)");
}

std::vector<std::string> builtin_structure_names() {
  return {"pure-set", "random-graph", "rational-order", "atomless-boolean", "integer-distance"};
}

}  // namespace fraisse

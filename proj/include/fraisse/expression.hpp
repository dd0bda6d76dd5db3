#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraisse {

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer expression over variables x0, x1, ... used to define user relations.
///
/// Operators (loosest first): ||, &&, comparisons, + -, * / %, unary - and !.
/// Functions: bit(a, i), min(a, b), max(a, b), abs(a). Truth values are 0/1;
/// division or remainder by zero raises ExpressionError at evaluation time.
class Expression {
 public:
  static Expression parse(const std::string& text);

  std::int64_t evaluate(std::span<const std::int64_t> vars) const;
  /// One more than the largest variable index mentioned (0 if none).
  std::size_t arity() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace fraisse

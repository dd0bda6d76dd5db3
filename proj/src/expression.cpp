#include "fraisse/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace fraisse {

enum class Op {
  Number, Var, Neg, Not, Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge, And, Or, Bit, Min, Max, Abs,
};

struct Expression::Node {
  Op op;
  std::int64_t value = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, std::vector<NodePtr> args, std::int64_t value = 0) {
  return std::make_shared<Expression::Node>(Expression::Node{op, value, std::move(args)});
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse_all() {
    auto e = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError(what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const std::string& token) {
    skip_space();
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }

  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }

  NodePtr parse_or() {
    auto lhs = parse_and();
    while (accept("||")) lhs = make(Op::Or, {lhs, parse_and()});
    return lhs;
  }

  NodePtr parse_and() {
    auto lhs = parse_cmp();
    while (accept("&&")) lhs = make(Op::And, {lhs, parse_cmp()});
    return lhs;
  }

  NodePtr parse_cmp() {
    auto lhs = parse_add();
    static const std::pair<const char*, Op> ops[] = {
        {"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
    for (auto [tok, op] : ops) {
      if (accept(tok)) return make(op, {lhs, parse_add()});
    }
    return lhs;
  }

  NodePtr parse_add() {
    auto lhs = parse_mul();
    for (;;) {
      if (accept("+")) {
        lhs = make(Op::Add, {lhs, parse_mul()});
      } else if (peek_minus()) {
        ++pos_;
        lhs = make(Op::Sub, {lhs, parse_mul()});
      } else {
        return lhs;
      }
    }
  }

  bool peek_minus() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == '-';
  }

  NodePtr parse_mul() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept("*")) {
        lhs = make(Op::Mul, {lhs, parse_unary()});
      } else if (accept("/")) {
        lhs = make(Op::Div, {lhs, parse_unary()});
      } else if (accept("%")) {
        lhs = make(Op::Mod, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (peek_minus()) {
      ++pos_;
      return make(Op::Neg, {parse_unary()});
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!' &&
        (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=')) {
      ++pos_;
      return make(Op::Not, {parse_unary()});
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (accept("(")) {
      auto e = parse_or();
      expect(")");
      return e;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      errno = 0;
      auto v = std::strtoll(text_.substr(start, pos_ - start).c_str(), nullptr, 10);
      if (errno == ERANGE) fail("integer literal out of range");
      return make(Op::Number, {}, v);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    auto word = text_.substr(start, pos_ - start);
    if (word.size() > 1 && word[0] == 'x' &&
        std::all_of(word.begin() + 1, word.end(), [](char d) { return std::isdigit(d); })) {
      return make(Op::Var, {}, std::stoll(word.substr(1)));
    }
    static const std::pair<const char*, std::pair<Op, int>> functions[] = {
        {"bit", {Op::Bit, 2}}, {"min", {Op::Min, 2}}, {"max", {Op::Max, 2}}, {"abs", {Op::Abs, 1}}};
    for (auto [fname, spec] : functions) {
      if (word != fname) continue;
      expect("(");
      std::vector<NodePtr> args{parse_or()};
      for (int k = 1; k < spec.second; ++k) {
        expect(",");
        args.push_back(parse_or());
      }
      expect(")");
      return make(spec.first, std::move(args));
    }
    fail("unknown identifier '" + word + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::int64_t eval(const Expression::Node& n, std::span<const std::int64_t> vars) {
  auto arg = [&](std::size_t k) { return eval(*n.args[k], vars); };
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Var:
      if (static_cast<std::size_t>(n.value) >= vars.size())
        throw ExpressionError("variable x" + std::to_string(n.value) + " is unbound");
      return vars[static_cast<std::size_t>(n.value)];
    case Op::Neg: return -arg(0);
    case Op::Not: return arg(0) == 0 ? 1 : 0;
    case Op::Add: return arg(0) + arg(1);
    case Op::Sub: return arg(0) - arg(1);
    case Op::Mul: return arg(0) * arg(1);
    case Op::Div:
    case Op::Mod: {
      auto a = arg(0), b = arg(1);
      if (b == 0) throw ExpressionError("division by zero");
      return n.op == Op::Div ? a / b : a % b;
    }
    case Op::Eq: return arg(0) == arg(1);
    case Op::Ne: return arg(0) != arg(1);
    case Op::Lt: return arg(0) < arg(1);
    case Op::Le: return arg(0) <= arg(1);
    case Op::Gt: return arg(0) > arg(1);
    case Op::Ge: return arg(0) >= arg(1);
    case Op::And: return arg(0) != 0 && arg(1) != 0;
    case Op::Or: return arg(0) != 0 || arg(1) != 0;
    case Op::Bit: {
      auto a = arg(0), i = arg(1);
      if (i < 0 || i > 62) return 0;
      return (a >> i) & 1;
    }
    case Op::Min: return std::min(arg(0), arg(1));
    case Op::Max: return std::max(arg(0), arg(1));
    case Op::Abs: {
      auto a = arg(0);
      return a < 0 ? -a : a;
    }
  }
  throw ExpressionError("corrupt expression node");
}

std::size_t max_var(const Expression::Node& n) {
  std::size_t m = n.op == Op::Var ? static_cast<std::size_t>(n.value) + 1 : 0;
  for (const auto& a : n.args) m = std::max(m, max_var(*a));
  return m;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(e.text_).parse_all();
  return e;
}

std::int64_t Expression::evaluate(std::span<const std::int64_t> vars) const {
  return eval(*root_, vars);
}

std::size_t Expression::arity() const { return max_var(*root_); }

}  // namespace fraisse

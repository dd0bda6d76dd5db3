#include "fraisse/signature.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fraisse {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') &&
         std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

std::size_t Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].name == name) return i;
  }
  throw std::invalid_argument("unknown relation '" + name + "'");
}

AxiomTemplate parse_template(const std::string& text, const Signature& signature) {
  AxiomTemplate t;
  t.text = trim(text);
  std::size_t start = 0;
  while (start <= t.text.size()) {
    auto amp = t.text.find('&', start);
    auto piece = trim(t.text.substr(start, amp == std::string::npos ? std::string::npos : amp - start));
    if (piece.empty()) throw std::invalid_argument("empty literal in '" + t.text + "'");
    Literal lit;
    if (piece[0] == '!') {
      lit.negated = true;
      piece = trim(piece.substr(1));
    }
    auto open = piece.find('(');
    if (open == std::string::npos || piece.back() != ')')
      throw std::invalid_argument("malformed literal '" + piece + "'");
    lit.relation = signature.index_of(trim(piece.substr(0, open)));
    auto inner = piece.substr(open + 1, piece.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      auto comma = inner.find(',', pos);
      auto var = trim(inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (!is_identifier(var)) throw std::invalid_argument("bad variable '" + var + "'");
      auto it = std::find(t.variables.begin(), t.variables.end(), var);
      if (it == t.variables.end()) {
        t.variables.push_back(var);
        it = t.variables.end() - 1;
      }
      lit.vars.push_back(static_cast<std::size_t>(it - t.variables.begin()));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (lit.vars.size() != signature.relations[lit.relation].arity)
      throw std::invalid_argument("arity mismatch in literal '" + piece + "'");
    t.literals.push_back(std::move(lit));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  return t;
}

}  // namespace fraisse

#include <algorithm>
#include <stdexcept>

#include "patchcp/automata.hpp"

namespace patchcp::automata {

Regex Regex::sym(Symbol s) {
  if (s < 0) throw std::invalid_argument("regex symbol must be non-negative");
  return Regex(Kind::Sym, s, 0, {});
}

Regex Regex::seq(std::vector<Regex> children) { return Regex(Kind::Seq, 0, 0, std::move(children)); }

Regex Regex::alt(std::vector<Regex> children) { return Regex(Kind::Alt, 0, 0, std::move(children)); }

Regex Regex::star(Regex child) {
  std::vector<Regex> c;
  c.push_back(std::move(child));
  return Regex(Kind::Star, 0, 0, std::move(c));
}

Regex Regex::rep(Regex child, int n) {
  if (n < 0) throw std::invalid_argument("regex repetition count must be non-negative");
  std::vector<Regex> c;
  c.push_back(std::move(child));
  return Regex(Kind::Rep, 0, n, std::move(c));
}

Regex Regex::literal(std::span<const Symbol> word) {
  std::vector<Regex> parts;
  parts.reserve(word.size());
  for (Symbol s : word) parts.push_back(sym(s));
  return seq(std::move(parts));
}

Regex Regex::literal(std::initializer_list<Symbol> word) {
  return literal(std::span<const Symbol>(word.begin(), word.size()));
}

Symbol Regex::max_symbol() const {
  if (kind_ == Kind::Sym) return symbol_;
  Symbol m = -1;
  for (const auto& c : children_) m = std::max(m, c.max_symbol());
  return m;
}

Symbol Regex::min_symbol() const {
  if (kind_ == Kind::Sym) return symbol_;
  Symbol m = 0;
  for (const auto& c : children_) m = std::min(m, c.min_symbol());
  return m;
}

std::string Regex::to_string() const {
  switch (kind_) {
    case Kind::Sym:
      return std::to_string(symbol_);
    case Kind::Seq: {
      std::string out;
      for (const auto& c : children_) {
        bool wrap = c.kind() == Kind::Alt && c.children().size() > 1;
        out += wrap ? "(" + c.to_string() + ")" : c.to_string();
      }
      return out;
    }
    case Kind::Alt: {
      if (children_.empty()) return "{}";
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += "|";
        out += children_[i].to_string();
      }
      return out;
    }
    case Kind::Star:
    case Kind::Rep: {
      const auto& c = children_.front();
      std::string inner = c.kind() == Kind::Sym ? c.to_string() : "(" + c.to_string() + ")";
      return inner + (kind_ == Kind::Star ? std::string("*") : "^" + std::to_string(count_));
    }
  }
  return {};
}

std::string to_string(std::span<const Symbol> word) {
  std::string out;
  bool wide = std::any_of(word.begin(), word.end(), [](Symbol s) { return s > 9; });
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (wide && i) out += ',';
    out += std::to_string(word[i]);
  }
  return out;
}

}  // namespace patchcp::automata

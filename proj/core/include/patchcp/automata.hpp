#pragma once

// Regular expressions over small integer alphabets and their compilation
// to complete deterministic automata.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace patchcp::automata {

inline constexpr int kMaxAlphabet = 16;

using Symbol = int;
using Word = std::vector<Symbol>;

/// Regular expression AST. Built programmatically; there is no text parser.
class Regex {
 public:
  enum class Kind { Sym, Seq, Alt, Star, Rep };

  static Regex sym(Symbol s);
  /// Concatenation. An empty sequence denotes the empty word.
  static Regex seq(std::vector<Regex> children);
  /// Union. An empty union denotes the empty language.
  static Regex alt(std::vector<Regex> children);
  static Regex star(Regex child);
  /// Exactly `n` repetitions of `child`.
  static Regex rep(Regex child, int n);

  static Regex epsilon() { return seq({}); }
  static Regex literal(std::span<const Symbol> word);
  static Regex literal(std::initializer_list<Symbol> word);
  /// `s^n`
  static Regex run(Symbol s, int n) { return rep(sym(s), n); }

  Kind kind() const { return kind_; }
  Symbol symbol() const { return symbol_; }
  int count() const { return count_; }
  const std::vector<Regex>& children() const { return children_; }

  /// Largest symbol mentioned anywhere in the tree, or -1 if none.
  Symbol max_symbol() const;
  /// Smallest symbol mentioned anywhere in the tree, or 0 if none.
  Symbol min_symbol() const;

  std::string to_string() const;

 private:
  Regex(Kind kind, Symbol symbol, int count, std::vector<Regex> children)
      : kind_(kind), symbol_(symbol), count_(count), children_(std::move(children)) {}

  Kind kind_;
  Symbol symbol_ = 0;
  int count_ = 0;
  std::vector<Regex> children_;
};

/// Complete DFA with a dense transition table. The dead state, when the
/// language needs one, is an ordinary non-accepting sink state.
class Dfa {
 public:
  Dfa(int alphabet, int start, std::vector<int> transitions, std::vector<std::uint8_t> accepting);

  int alphabet() const { return alphabet_; }
  int start() const { return start_; }
  int state_count() const { return static_cast<int>(accepting_.size()); }
  int next(int state, Symbol s) const {
    return transitions_[static_cast<std::size_t>(state) * static_cast<std::size_t>(alphabet_) +
                        static_cast<std::size_t>(s)];
  }
  bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)] != 0; }

  const std::vector<int>& transitions() const { return transitions_; }
  const std::vector<std::uint8_t>& accepting_states() const { return accepting_; }

  bool operator==(const Dfa&) const = default;

 private:
  int alphabet_;
  int start_;
  std::vector<int> transitions_;
  std::vector<std::uint8_t> accepting_;
};

/// Thompson NFA followed by subset construction. Throws std::invalid_argument
/// if the alphabet size is outside 1..kMaxAlphabet or a symbol is out of range.
Dfa compile(const Regex& regex, int alphabet);

/// Removes unreachable states and merges language-equivalent ones (Hopcroft).
/// States of the result are numbered in breadth-first order from the start.
Dfa minimize(const Dfa& dfa);

inline Dfa compile_minimal(const Regex& regex, int alphabet) {
  return minimize(compile(regex, alphabet));
}

bool accepts(const Dfa& dfa, std::span<const Symbol> word);

/// All accepted words of exactly `length` symbols, in lexicographic order.
std::vector<Word> enumerate(const Dfa& dfa, int length);

/// Number of accepted words of exactly `length` symbols, saturating at
/// UINT64_MAX.
std::uint64_t count_words(const Dfa& dfa, int length);

std::string to_string(std::span<const Symbol> word);

}  // namespace patchcp::automata

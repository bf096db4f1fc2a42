#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "patchcp/automata.hpp"
#include "patchcp/kernel/domain.hpp"

namespace patchcp::kernel {

enum class RegularAlgorithm {
  /// Path table when the language has at most kPathTableLimit words of the
  /// sequence length, layered graph otherwise.
  Auto,
  /// Forward/backward sweep over the unrolled layered graph.
  LayeredGraph,
  /// Bit-parallel filtering of the explicitly enumerated accepted words.
  PathTable,
};

inline constexpr std::size_t kPathTableLimit = 4096;

/// vars spell a word accepted by dfa.
struct Regular {
  std::shared_ptr<const automata::Dfa> dfa;
  std::vector<VarRef> vars;
  RegularAlgorithm algorithm = RegularAlgorithm::Auto;
};

/// sum(coeffs[i] * vars[i]) == constant, bounds consistent.
struct LinearEq {
  std::vector<int> coeffs;
  std::vector<VarRef> vars;
  int constant = 0;
};

/// result == sum(vars) over 0/1 variables.
struct BoolSum {
  std::vector<VarRef> vars;
  VarRef result;
};

/// b <=> (x == value)
struct ReifiedIntEq {
  VarRef b;
  VarRef x;
  int value = 0;
};

/// f <=> (prev && z)
struct AndChain {
  VarRef prev;
  VarRef z;
  VarRef f;
};

/// cell == p <=> bools[p] == 1 for every p; cell == empty <=> all bools are 0.
struct CellChannel {
  VarRef cell;
  std::vector<VarRef> bools;
  int empty_value = 0;
};

using PropagatorDescriptor = std::variant<Regular, LinearEq, BoolSum, ReifiedIntEq, AndChain, CellChannel>;

}  // namespace patchcp::kernel

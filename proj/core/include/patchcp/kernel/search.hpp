#pragma once

#include <functional>
#include <span>
#include <vector>

#include "patchcp/kernel/ledger.hpp"
#include "patchcp/kernel/state.hpp"

namespace patchcp::kernel {

enum class SearchMode { First, All };
enum class ValueOrder { Ascending, Descending };

/// Score of the candidate at `position` in a stage's variable list. The
/// unassigned candidate with the highest score is branched on; ties go to
/// the lowest position.
using VarScore = std::function<double(const SolverState&, const StatsLedger&, std::size_t position)>;

struct BranchStage {
  std::vector<VarRef> vars;
  ValueOrder order = ValueOrder::Ascending;
  /// Empty means in-order selection (first unassigned variable).
  VarScore score;
};

/// Stages are exhausted in order: a stage is branched on only once every
/// variable of the earlier stages is assigned.
using Brancher = std::vector<BranchStage>;

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t failures = 0;
  std::uint64_t solutions = 0;
};

/// Depth-first search with chronological backtracking over state copies.
/// Each node tries the values of the chosen variable one by one, in the
/// stage's value order. A leaf is reached once every brancher variable is
/// assigned; leaves are returned propagated (Solved when every variable of
/// the state is assigned, AtFixpoint otherwise). First stops after one leaf.
/// An empty result means no leaf exists.
std::vector<SolverState> search(const SolverState& root, const Brancher& brancher, SearchMode mode,
                                StatsLedger& ledger, SearchStats* stats = nullptr);

enum class MeritKind { Size, AFC, Action, CHB, SumAFC, SumAction, SumCHB };

/// Heuristic value of `var`: Size is its domain size, AFC the summed failure
/// counts of the propagators subscribed to it, Action its prune count, CHB its
/// q-score. Sum* kinds add the same quantity over `companions`. Callers
/// wanting the X/Size form divide by the domain size themselves.
double merit(const SolverState& state, const StatsLedger& ledger, VarRef var, MeritKind kind,
             std::span<const VarRef> companions = {});

}  // namespace patchcp::kernel

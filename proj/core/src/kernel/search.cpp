#include <algorithm>
#include <optional>

#include "patchcp/kernel/search.hpp"

namespace patchcp::kernel {

namespace {

struct Choice {
  VarRef var;
  ValueOrder order;
};

std::optional<Choice> select(const SolverState& s, const StatsLedger& ledger, const Brancher& brancher) {
  for (const auto& stage : brancher) {
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t i = 0; i < stage.vars.size(); ++i) {
      if (s.domain(stage.vars[i]).assigned()) continue;
      if (!stage.score) {
        best = i;
        break;
      }
      double sc = stage.score(s, ledger, i);
      if (!best || sc > best_score) {
        best = i;
        best_score = sc;
      }
    }
    if (best) return Choice{stage.vars[*best], stage.order};
  }
  return std::nullopt;
}

class Dfs {
 public:
  Dfs(const Brancher& b, SearchMode mode, StatsLedger& ledger, SearchStats& stats)
      : brancher_(b), mode_(mode), ledger_(ledger), stats_(stats) {}

  // Returns false once the search should stop.
  bool explore(SolverState& s, std::vector<SolverState>& out) {
    ++stats_.nodes;
    if (s.propagate(ledger_) == Status::Failed) {
      ++stats_.failures;
      return true;
    }
    auto choice = select(s, ledger_, brancher_);
    if (!choice) {
      ++stats_.solutions;
      out.push_back(std::move(s));
      return mode_ == SearchMode::All;
    }
    std::vector<int> values = s.domain(choice->var).values();
    if (choice->order == ValueOrder::Descending) std::reverse(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i + 1 == values.size()) {
        // Last alternative reuses the parent state.
        s.assign(choice->var, values[i]);
        return explore(s, out);
      }
      SolverState child = s.snapshot();
      child.assign(choice->var, values[i]);
      if (!explore(child, out)) return false;
    }
    return true;
  }

 private:
  const Brancher& brancher_;
  SearchMode mode_;
  StatsLedger& ledger_;
  SearchStats& stats_;
};

}  // namespace

std::vector<SolverState> search(const SolverState& root, const Brancher& brancher, SearchMode mode,
                                StatsLedger& ledger, SearchStats* stats) {
  std::vector<SolverState> out;
  if (root.failed()) return out;
  SearchStats local;
  SolverState s = root.snapshot();
  Dfs(brancher, mode, ledger, stats ? *stats : local).explore(s, out);
  return out;
}

double merit(const SolverState& state, const StatsLedger& ledger, VarRef var, MeritKind kind,
             std::span<const VarRef> companions) {
  auto afc = [&](VarRef v) {
    double sum = 0.0;
    for (std::uint32_t p : state.subscribers(v)) sum += ledger.afc(p);
    return sum;
  };
  switch (kind) {
    case MeritKind::Size:
      return state.domain(var).size();
    case MeritKind::AFC:
      return afc(var);
    case MeritKind::Action:
      return ledger.action(var);
    case MeritKind::CHB:
      return ledger.chb(var);
    case MeritKind::SumAFC: {
      double sum = afc(var);
      for (VarRef c : companions) sum += afc(c);
      return sum;
    }
    case MeritKind::SumAction: {
      double sum = ledger.action(var);
      for (VarRef c : companions) sum += ledger.action(c);
      return sum;
    }
    case MeritKind::SumCHB: {
      double sum = ledger.chb(var);
      for (VarRef c : companions) sum += ledger.chb(c);
      return sum;
    }
  }
  return 0.0;
}

}  // namespace patchcp::kernel

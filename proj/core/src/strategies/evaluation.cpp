#include <chrono>
#include <stdexcept>

#include "patchcp/strategies.hpp"

namespace patchcp::strategies {

long pggr(const BoardModel& m, const SolverState& before, const SolverState& after, int p) {
  long sum = 0;
  for (int r = 0; r < m.geometry().height; ++r) {
    for (int c = 0; c < m.geometry().width; ++c) {
      const kernel::VarRef cell = m.board_cell(r, c);
      const auto& b = before.domain(cell);
      const auto& a = after.domain(cell);
      if (b.size() == 1) continue;
      if (a.assigned() && a.value() == p) continue;
      sum += b.size() - a.size();
    }
  }
  return sum;
}

namespace {

template <typename Key>
std::size_t argmin(const std::vector<PlacementAlternative>& alts, Key key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < alts.size(); ++i)
    if (key(alts[i]) < key(alts[best])) best = i;
  return best;
}

}  // namespace

std::size_t evaluate(const BoardModel& m, const SolverState& before, int p,
                     std::vector<PlacementAlternative>& alternatives, EvaluationKind kind, Rng* rng) {
  if (alternatives.empty()) throw std::invalid_argument("no alternatives to evaluate");
  if (kind == EvaluationKind::Regret || kind == EvaluationKind::ReverseRegret)
    for (auto& a : alternatives)
      if (!a.pggr_value) a.pggr_value = pggr(m, before, a.state, p);

  switch (kind) {
    case EvaluationKind::First:
      return 0;
    case EvaluationKind::Random:
      if (!rng) throw std::invalid_argument("random evaluation needs a generator");
      return static_cast<std::size_t>(rng->below(alternatives.size()));
    case EvaluationKind::Left:
      return argmin(alternatives, [](const PlacementAlternative& a) { return a.right_extent; });
    case EvaluationKind::Bottom:
      return argmin(alternatives, [](const PlacementAlternative& a) { return a.top_extent; });
    case EvaluationKind::Area:
      return argmin(alternatives, [](const PlacementAlternative& a) { return a.bb_area_increase; });
    case EvaluationKind::Regret:
      return argmin(alternatives, [](const PlacementAlternative& a) { return *a.pggr_value; });
    case EvaluationKind::ReverseRegret:
      return argmin(alternatives, [](const PlacementAlternative& a) { return -*a.pggr_value; });
  }
  return 0;
}

PlacementOutcome try_place(const BoardModel& m, SolverState& state, int p, Strategy& strategy, StatsLedger& ledger) {
  const auto start = std::chrono::steady_clock::now();
  PlacementOutcome out;
  const auto& d = strategy.descriptor();
  auto alts = generate(m, state, p, d.policy, ledger);
  out.alternatives = alts.size();
  if (alts.empty()) {
    state.assign(m.vars(p).used, 0);
    if (state.propagate(ledger) == kernel::Status::Failed)
      throw std::logic_error("marking an unplaceable patch unused failed");
  } else {
    const std::size_t chosen = evaluate(m, state, p, alts, d.evaluation.kind, &strategy.rng());
    state = std::move(alts[chosen].state);
    out.placed = true;
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace patchcp::strategies

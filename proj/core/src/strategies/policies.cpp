#include "patchcp/kernel/search.hpp"
#include "patchcp/strategies.hpp"

namespace patchcp::strategies {

using kernel::BranchStage;
using kernel::Brancher;
using kernel::MeritKind;
using kernel::SearchMode;
using kernel::Status;
using kernel::ValueOrder;
using kernel::VarRef;

namespace {

std::vector<VarRef> main_cells(const BoardModel& m, int p) {
  std::vector<VarRef> out;
  for (int r = 0; r < m.geometry().height; ++r)
    for (int c = 0; c < m.geometry().width; ++c) out.push_back(m.patch_cell(p, r, c));
  return out;
}

std::vector<VarRef> board_cells(const BoardModel& m) {
  std::vector<VarRef> out;
  for (int r = 0; r < m.geometry().height; ++r)
    for (int c = 0; c < m.geometry().width; ++c) out.push_back(m.board_cell(r, c));
  return out;
}

std::optional<MeritKind> merit_of(PolicyBase b) {
  switch (b) {
    case PolicyBase::AFC:
      return MeritKind::AFC;
    case PolicyBase::Action:
      return MeritKind::Action;
    case PolicyBase::CHB:
      return MeritKind::CHB;
    case PolicyBase::SumAFC:
      return MeritKind::SumAFC;
    case PolicyBase::SumAction:
      return MeritKind::SumAction;
    case PolicyBase::SumCHB:
      return MeritKind::SumCHB;
    default:
      return std::nullopt;
  }
}

bool summed(PolicyBase b) {
  return b == PolicyBase::SumAFC || b == PolicyBase::SumAction || b == PolicyBase::SumCHB;
}

// Heuristic values come from the board cell B[r][c] matching each B_p cell.
kernel::VarScore heuristic_score(const BoardModel& m, PolicyBase base) {
  auto board = std::make_shared<std::vector<VarRef>>(board_cells(m));
  if (base == PolicyBase::Size) {
    return [board](const SolverState& s, const StatsLedger&, std::size_t i) {
      return -static_cast<double>(s.domain((*board)[i]).size());
    };
  }
  const MeritKind kind = *merit_of(base);
  std::shared_ptr<std::vector<std::vector<VarRef>>> companions;
  if (summed(base)) {
    companions = std::make_shared<std::vector<std::vector<VarRef>>>(board->size());
    for (int t = 0; t < m.patch_count(); ++t) {
      auto cells = main_cells(m, t);
      for (std::size_t i = 0; i < cells.size(); ++i) (*companions)[i].push_back(cells[i]);
    }
  }
  return [board, companions, kind](const SolverState& s, const StatsLedger& ledger, std::size_t i) {
    const VarRef cell = (*board)[i];
    std::span<const VarRef> extra;
    if (companions) extra = (*companions)[i];
    return kernel::merit(s, ledger, cell, kind, extra) / s.domain(cell).size();
  };
}

Brancher bl_brancher(const BoardModel& m, int p, bool column_first) {
  const auto& v = m.vars(p);
  BranchStage cols{{v.first_col}, ValueOrder::Ascending, {}};
  BranchStage rows{{v.first_row}, ValueOrder::Ascending, {}};
  BranchStage cells{main_cells(m, p), ValueOrder::Descending, {}};
  if (column_first) return {cols, rows, cells};
  return {rows, cols, cells};
}

void first_leaf(const SolverState& s, const Brancher& b, StatsLedger& ledger, std::vector<SolverState>& out) {
  auto leaves = kernel::search(s, b, SearchMode::First, ledger);
  for (auto& l : leaves) out.push_back(std::move(l));
}

// Placements of p from a state where U_p = 1 has been propagated.
void run_base(const BoardModel& m, const SolverState& s, int p, PolicyBase base, int c_max, StatsLedger& ledger,
              std::vector<SolverState>& out) {
  switch (base) {
    case PolicyBase::BL:
      first_leaf(s, bl_brancher(m, p, true), ledger, out);
      return;
    case PolicyBase::BLLB:
      first_leaf(s, bl_brancher(m, p, true), ledger, out);
      first_leaf(s, bl_brancher(m, p, false), ledger, out);
      return;
    case PolicyBase::ParetoBL: {
      const Brancher b = bl_brancher(m, p, true);
      for (int c = 0; c <= c_max + 1; ++c) {
        SolverState child = s.snapshot();
        child.assign(m.vars(p).first_col, c);
        if (child.failed()) continue;
        first_leaf(child, b, ledger, out);
      }
      return;
    }
    case PolicyBase::All: {
      Brancher b{{main_cells(m, p), ValueOrder::Descending, {}}};
      for (auto& l : kernel::search(s, b, SearchMode::All, ledger)) out.push_back(std::move(l));
      return;
    }
    case PolicyBase::InOrder: {
      Brancher b{{main_cells(m, p), ValueOrder::Descending, {}}};
      first_leaf(s, b, ledger, out);
      return;
    }
    default: {
      Brancher b{{main_cells(m, p), ValueOrder::Descending, heuristic_score(m, base)}};
      first_leaf(s, b, ledger, out);
      return;
    }
  }
}

}  // namespace

std::vector<PlacementAlternative> generate(const BoardModel& m, const SolverState& state, int p,
                                           PolicyDescriptor policy, StatsLedger& ledger) {
  std::vector<PlacementAlternative> result;
  const auto& v = m.vars(p);
  SolverState placed = state.snapshot();
  placed.assign(v.used, 1);
  if (placed.propagate(ledger) == Status::Failed) return result;

  const board::BoardView before = board::view(m, state);
  std::vector<SolverState> leaves;
  if (policy.mode == TransformMode::Every && policy.base != PolicyBase::All) {
    for (int t : placed.domain(v.transform).values()) {
      if (t < 1) continue;
      SolverState child = placed.snapshot();
      child.assign(v.transform, t);
      if (child.propagate(ledger) == Status::Failed) continue;
      run_base(m, child, p, policy.base, before.c_max, ledger, leaves);
    }
  } else {
    run_base(m, placed, p, policy.base, before.c_max, ledger, leaves);
  }

  const int base_area = before.bounding_box.area();
  for (auto& leaf : leaves) {
    PlacementAlternative alt{std::move(leaf), -1, -1, 0, std::nullopt};
    const board::Box box = board::patch_box(m, alt.state, p);
    alt.right_extent = box.max_col;
    alt.top_extent = box.max_row;
    alt.bb_area_increase = board::view(m, alt.state).bounding_box.area() - base_area;
    result.push_back(std::move(alt));
  }
  return result;
}

}  // namespace patchcp::strategies

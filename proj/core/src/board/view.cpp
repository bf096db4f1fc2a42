#include <algorithm>

#include "patchcp/board.hpp"

namespace patchcp::board {

void Box::add(int row, int col) {
  if (empty()) {
    min_row = max_row = row;
    min_col = max_col = col;
    return;
  }
  min_row = std::min(min_row, row);
  max_row = std::max(max_row, row);
  min_col = std::min(min_col, col);
  max_col = std::max(max_col, col);
}

namespace {

bool owns(const BoardModel& m, const SolverState& state, int p, int row, int col) {
  VarRef v = m.patch_cell(p, row, col);
  return state.assigned(v) && state.value(v) == 1;
}

}  // namespace

BoardView view(const BoardModel& m, const SolverState& state) {
  const Geometry& g = m.geometry();
  BoardView out;
  out.owner.assign(static_cast<std::size_t>(g.cells()), -1);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      VarRef cell = m.board_cell(r, c);
      if (!state.assigned(cell) || state.value(cell) >= m.patch_count()) continue;
      out.owner[static_cast<std::size_t>(r * g.width + c)] = state.value(cell);
      ++out.area;
      out.bounding_box.add(r, c);
      out.c_max = std::max(out.c_max, c);
    }
  }
  return out;
}

Box patch_box(const BoardModel& m, const SolverState& state, int p) {
  Box box;
  for (int r = 0; r < m.geometry().height; ++r)
    for (int c = 0; c < m.geometry().width; ++c)
      if (owns(m, state, p, r, c)) box.add(r, c);
  return box;
}

int right_extent(const BoardModel& m, const SolverState& state, int p) {
  Box b = patch_box(m, state, p);
  return b.empty() ? -1 : b.max_col;
}

int top_extent(const BoardModel& m, const SolverState& state, int p) {
  Box b = patch_box(m, state, p);
  return b.empty() ? -1 : b.max_row;
}

char patch_glyph(int patch_id) {
  if (patch_id < 10) return static_cast<char>('0' + patch_id);
  if (patch_id < 36) return static_cast<char>('a' + patch_id - 10);
  return static_cast<char>('A' + patch_id - 36);
}

std::string render(const BoardModel& m, const SolverState& state) {
  const BoardView v = view(m, state);
  const Geometry& g = m.geometry();
  std::string out;
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      int owner = v.owner[static_cast<std::size_t>(r * g.width + c)];
      out += owner < 0 ? '.' : patch_glyph(m.patches()[static_cast<std::size_t>(owner)].id);
    }
    out += '\n';
  }
  return out;
}

}  // namespace patchcp::board

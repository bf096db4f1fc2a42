#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patchcp/catalog.hpp"
#include "patchcp/kernel/state.hpp"

namespace patchcp::board {

using kernel::SolverState;
using kernel::VarRef;

/// Variables of one patch. Cell grids are row-major over the
/// dummy-extended board (height x stride).
struct PatchVars {
  VarRef used;
  VarRef unused;
  std::array<VarRef, catalog::kTransformSlots> select{};
  /// 0 when unplaced, s+1 when placed with transform s.
  VarRef transform;
  std::vector<VarRef> cells;
  std::vector<VarRef> col_sums;
  std::vector<VarRef> row_sums;
  std::vector<VarRef> col_zero;
  std::vector<VarRef> col_first;
  std::vector<VarRef> row_zero;
  std::vector<VarRef> row_first;
  VarRef first_col;
  VarRef first_row;
  int transform_count = 0;
};

/// Variable layout of a placement model. Board cells take the local patch
/// index 0..P-1, `empty_value()` or, on the dummy column, `end_value()`.
class BoardModel {
 public:
  const Geometry& geometry() const { return geometry_; }
  const std::vector<catalog::Patch>& patches() const { return patches_; }
  int patch_count() const { return static_cast<int>(patches_.size()); }
  int empty_value() const { return patch_count(); }
  int end_value() const { return patch_count() + 1; }

  VarRef board_cell(int row, int col) const { return board_[index(row, col)]; }
  const std::vector<VarRef>& board_cells() const { return board_; }
  const PatchVars& vars(int p) const { return vars_[static_cast<std::size_t>(p)]; }
  VarRef patch_cell(int p, int row, int col) const { return vars(p).cells[index(row, col)]; }
  /// Local index of the patch with the given catalog id, or -1.
  int local_index(int patch_id) const;

  /// One past the last index for an unplaced patch.
  int row_sentinel() const { return geometry_.height; }
  int col_sentinel() const { return geometry_.width; }

 private:
  friend struct BuiltModel build_model(const std::vector<catalog::Patch>&, Geometry);

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row * geometry_.stride() + col);
  }

  Geometry geometry_;
  std::vector<catalog::Patch> patches_;
  std::vector<VarRef> board_;
  std::vector<PatchVars> vars_;
};

struct BuiltModel {
  std::shared_ptr<const BoardModel> model;
  SolverState root;
};

/// Posts the full placement model and propagates the root to fixpoint.
/// Throws std::invalid_argument for 0 or more than 38 patches or a shape that
/// does not fit, std::runtime_error if the root propagation fails.
BuiltModel build_model(const std::vector<catalog::Patch>& patches, Geometry g = kStandardBoard);

/// Throws std::logic_error if the variable is not assigned in `state`.
int first_row(const BoardModel& m, const SolverState& state, int p);
int first_col(const BoardModel& m, const SolverState& state, int p);

struct Box {
  int min_row = 0;
  int max_row = -1;
  int min_col = 0;
  int max_col = -1;

  bool empty() const { return max_row < min_row; }
  int area() const { return empty() ? 0 : (max_row - min_row + 1) * (max_col - min_col + 1); }
  void add(int row, int col);
};

struct BoardView {
  /// Local patch index per main cell (row-major, width columns), -1 if not
  /// assigned to any patch.
  std::vector<int> owner;
  int area = 0;
  Box bounding_box;
  /// Largest column holding an assigned cell, -1 on an empty board.
  int c_max = -1;
};

BoardView view(const BoardModel& m, const SolverState& state);

/// Box of the cells assigned to patch p (empty if none).
Box patch_box(const BoardModel& m, const SolverState& state, int p);
/// Largest column / row of the patch's cells, -1 if none.
int right_extent(const BoardModel& m, const SolverState& state, int p);
int top_extent(const BoardModel& m, const SolverState& state, int p);

/// One line per row, '.' for empty or undecided cells and the patch id in
/// base 36 (ids 36 and up continue with 'A', 'B', ...) otherwise.
std::string render(const BoardModel& m, const SolverState& state);
char patch_glyph(int patch_id);

}  // namespace patchcp::board

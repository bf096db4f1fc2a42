#include <stdexcept>
#include <string>

#include "patchcp/board.hpp"
#include "patchcp/kernel/ledger.hpp"

namespace patchcp::board {

using kernel::Domain;

namespace {

constexpr std::size_t kMaxPatches = 38;

std::shared_ptr<const automata::Dfa> dfa_of(const automata::Regex& re, int alphabet) {
  return std::make_shared<const automata::Dfa>(automata::compile_minimal(re, alphabet));
}

}  // namespace

struct ModelBuilder {
  BoardModel model;
  std::vector<Domain> domains;

  VarRef add(Domain d) {
    domains.push_back(d);
    return VarRef{static_cast<std::uint32_t>(domains.size() - 1)};
  }

  std::vector<VarRef> add_many(std::size_t n, Domain d) {
    std::vector<VarRef> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(add(d));
    return out;
  }

  // Z_i <=> sums_i == 0, F_0 = Z_0, F_i <=> F_{i-1} && Z_i, first = sum F.
  static void post_first(SolverState& s, const std::vector<VarRef>& sums, const std::vector<VarRef>& zero,
                         const std::vector<VarRef>& first_flags, VarRef first) {
    for (std::size_t i = 0; i < zero.size(); ++i) s.post(kernel::ReifiedIntEq{zero[i], sums[i], 0});
    s.post(kernel::LinearEq{{1, -1}, {first_flags[0], zero[0]}, 0});
    for (std::size_t i = 1; i < zero.size(); ++i) s.post(kernel::AndChain{first_flags[i - 1], zero[i], first_flags[i]});
    s.post(kernel::BoolSum{first_flags, first});
  }
};

int BoardModel::local_index(int patch_id) const {
  for (std::size_t i = 0; i < patches_.size(); ++i)
    if (patches_[i].id == patch_id) return static_cast<int>(i);
  return -1;
}

BuiltModel build_model(const std::vector<catalog::Patch>& patches, Geometry g) {
  if (patches.empty() || patches.size() > kMaxPatches)
    throw std::invalid_argument("a board model needs 1.." + std::to_string(kMaxPatches) + " patches");
  if (g.width < 1 || g.height < 1 || g.width > 9 || g.height > 9)
    throw std::invalid_argument("board dimensions must be within 1..9");

  ModelBuilder b;
  BoardModel& m = b.model;
  m.geometry_ = g;
  m.patches_ = patches;
  const int P = static_cast<int>(patches.size());
  const std::size_t positions = static_cast<std::size_t>(g.positions());
  const std::size_t stride = static_cast<std::size_t>(g.stride());

  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.stride(); ++c)
      m.board_.push_back(b.add(c == g.width ? Domain::singleton(P + 1) : Domain::range(0, P)));

  for (const catalog::Patch& patch : patches) {
    PatchVars v;
    v.used = b.add(Domain::boolean());
    v.unused = b.add(Domain::boolean());
    for (auto& s : v.select) s = b.add(Domain::boolean());
    v.transform = b.add(Domain::range(0, catalog::kTransformSlots));
    for (std::size_t i = 0; i < positions; ++i)
      v.cells.push_back(b.add(i % stride == static_cast<std::size_t>(g.width) ? Domain::singleton(0) : Domain::boolean()));
    for (int c = 0; c < g.stride(); ++c)
      v.col_sums.push_back(b.add(c == g.width ? Domain::singleton(0) : Domain::range(0, g.height)));
    v.row_sums = b.add_many(static_cast<std::size_t>(g.height), Domain::range(0, g.width));
    v.col_zero = b.add_many(static_cast<std::size_t>(g.width), Domain::boolean());
    v.col_first = b.add_many(static_cast<std::size_t>(g.width), Domain::boolean());
    v.row_zero = b.add_many(static_cast<std::size_t>(g.height), Domain::boolean());
    v.row_first = b.add_many(static_cast<std::size_t>(g.height), Domain::boolean());
    v.first_col = b.add(Domain::range(0, g.width));
    v.first_row = b.add(Domain::range(0, g.height));
    v.transform_count = static_cast<int>(catalog::transforms(patch.shape).size());
    m.vars_.push_back(std::move(v));
  }

  SolverState s(std::move(b.domains));
  for (int p = 0; p < P; ++p) {
    const catalog::Patch& patch = patches[static_cast<std::size_t>(p)];
    const PatchVars& v = m.vars_[static_cast<std::size_t>(p)];
    std::vector<VarRef> prefix{v.used, v.unused};
    prefix.insert(prefix.end(), v.select.begin(), v.select.end());

    std::vector<VarRef> placement = prefix;
    placement.insert(placement.end(), v.cells.begin(), v.cells.end());
    s.post(kernel::Regular{dfa_of(catalog::reified_patch_language(patch, g), 2), placement});

    std::vector<VarRef> usage = prefix;
    usage.insert(usage.end(), v.col_sums.begin(), v.col_sums.end());
    usage.insert(usage.end(), v.row_sums.begin(), v.row_sums.end());
    s.post(kernel::Regular{dfa_of(catalog::usage_language(patch, g), catalog::usage_alphabet(g)), usage});

    for (int c = 0; c < g.width; ++c) {
      std::vector<VarRef> column;
      for (int r = 0; r < g.height; ++r) column.push_back(m.patch_cell(p, r, c));
      s.post(kernel::BoolSum{column, v.col_sums[static_cast<std::size_t>(c)]});
    }
    for (int r = 0; r < g.height; ++r) {
      std::vector<VarRef> row;
      for (int c = 0; c < g.width; ++c) row.push_back(m.patch_cell(p, r, c));
      s.post(kernel::BoolSum{row, v.row_sums[static_cast<std::size_t>(r)]});
    }
    std::vector<VarRef> main_cols(v.col_sums.begin(), v.col_sums.begin() + g.width);
    ModelBuilder::post_first(s, main_cols, v.col_zero, v.col_first, v.first_col);
    ModelBuilder::post_first(s, v.row_sums, v.row_zero, v.row_first, v.first_row);

    s.post(kernel::ReifiedIntEq{v.unused, v.transform, 0});
    for (int t = 0; t < catalog::kTransformSlots; ++t)
      s.post(kernel::ReifiedIntEq{v.select[static_cast<std::size_t>(t)], v.transform, t + 1});
  }

  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      std::vector<VarRef> bools;
      for (int p = 0; p < P; ++p) bools.push_back(m.patch_cell(p, r, c));
      s.post(kernel::CellChannel{m.board_cell(r, c), bools, P});
    }
  }

  kernel::StatsLedger scratch;
  if (s.propagate(scratch) == kernel::Status::Failed)
    throw std::runtime_error("placement model fails at the root");
  return {std::make_shared<const BoardModel>(std::move(m)), std::move(s)};
}

namespace {

int query(const SolverState& state, VarRef v, const char* what) {
  if (!state.assigned(v)) throw std::logic_error(std::string(what) + " is not assigned");
  return state.value(v);
}

}  // namespace

int first_row(const BoardModel& m, const SolverState& state, int p) {
  return query(state, m.vars(p).first_row, "first row");
}

int first_col(const BoardModel& m, const SolverState& state, int p) {
  return query(state, m.vars(p).first_col, "first column");
}

}  // namespace patchcp::board

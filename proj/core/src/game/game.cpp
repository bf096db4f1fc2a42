#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "patchcp/game.hpp"
#include "patchcp/rng.hpp"

namespace patchcp::game {

using strategies::PolicyBase;
using strategies::TransformMode;

namespace {

std::vector<catalog::Patch> board_patches(const catalog::Catalog& c) {
  std::vector<catalog::Patch> out = c.circle;
  out.insert(out.end(), c.specials.begin(), c.specials.end());
  return out;
}

bool has_bonus_square(const BoardModel& m, const SolverState& board) {
  const board::BoardView v = board::view(m, board);
  const Geometry& g = m.geometry();
  auto covered = [&](int r, int c) { return v.owner[static_cast<std::size_t>(r * g.width + c)] >= 0; };
  for (int r0 = 0; r0 + kBonusSide <= g.height; ++r0) {
    for (int c0 = 0; c0 + kBonusSide <= g.width; ++c0) {
      bool full = true;
      for (int r = r0; r < r0 + kBonusSide && full; ++r)
        for (int c = c0; c < c0 + kBonusSide && full; ++c) full = covered(r, c);
      if (full) return true;
    }
  }
  return false;
}

}  // namespace

GameContext::GameContext(catalog::Catalog catalog)
    : catalog_(std::move(catalog)), built_(board::build_model(board_patches(catalog_))) {}

int GameState::mover() const {
  const auto& a = players[0];
  const auto& b = players[1];
  if (a.position != b.position) return a.position < b.position ? 0 : 1;
  return b.arrival > a.arrival ? 1 : 0;
}

GameState new_game(std::shared_ptr<const GameContext> context, std::uint64_t seed,
                   strategies::StrategyDescriptor placement) {
  const auto& circle = context->catalog().circle;
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < circle.size(); ++i) {
    const auto& a = circle[i];
    const auto& b = circle[smallest];
    if (a.size() < b.size() || (a.size() == b.size() && a.id < b.id)) smallest = i;
  }
  std::vector<int> rest;
  for (std::size_t i = 0; i < circle.size(); ++i)
    if (i != smallest) rest.push_back(static_cast<int>(i));
  Rng rng(seed);
  for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.below(i)]);
  rest.push_back(static_cast<int>(smallest));

  GameState gs;
  gs.players[0].board = context->empty_board();
  gs.players[1].board = context->empty_board();
  gs.circle = std::move(rest);
  gs.specials_taken.assign(context->catalog().track.special_positions.size(), false);
  gs.placement = placement;
  gs.placer = std::make_shared<strategies::Strategy>(placement);
  gs.context = std::move(context);
  return gs;
}

std::vector<Move> legal_moves(const GameState& gs, StatsLedger& ledger) {
  std::vector<Move> moves;
  if (gs.finished()) return moves;
  moves.push_back(Move::advance());
  const PlayerState& me = gs.players[static_cast<std::size_t>(gs.mover())];
  const BoardModel& m = gs.context->model();
  const int next = std::min<int>(3, static_cast<int>(gs.circle.size()));
  for (int k = 0; k < next; ++k) {
    const int p = gs.circle[static_cast<std::size_t>(k)];
    if (m.patches()[static_cast<std::size_t>(p)].cost > me.buttons) continue;
    auto alts = strategies::generate(m, me.board, p, {PolicyBase::All, TransformMode::Every}, ledger);
    for (auto& a : alts) moves.push_back({MoveKind::Buy, k, std::move(a.state)});
  }
  return moves;
}

int remaining_income_spots(const GameState& gs, int position) {
  const auto& spots = gs.context->catalog().track.income_positions;
  return static_cast<int>(std::count_if(spots.begin(), spots.end(), [&](int s) { return s > position; }));
}

std::optional<double> gain(const catalog::Patch& patch, int t, int remaining_income_spots) {
  const int divisor = std::min(patch.time, kTrackEnd - t);
  if (divisor <= 0) return std::nullopt;
  return static_cast<double>(2 * patch.size() - patch.cost + remaining_income_spots * patch.income) / divisor;
}

GameState apply(const GameState& gs, const Move& move, StatsLedger& ledger) {
  if (gs.finished()) throw std::invalid_argument("the game is over");
  GameState next = gs;
  const int who = gs.mover();
  PlayerState& me = next.players[static_cast<std::size_t>(who)];
  const PlayerState& other = next.players[static_cast<std::size_t>(1 - who)];
  const BoardModel& m = gs.context->model();
  const auto& track = gs.context->catalog().track;
  const int from = me.position;

  if (move.kind == MoveKind::Advance) {
    const int to = std::min(other.position + 1, kTrackEnd);
    me.buttons += to - from;
    me.position = to;
  } else {
    const int available = std::min<int>(3, static_cast<int>(gs.circle.size()));
    if (move.offset < 0 || move.offset >= available) throw std::invalid_argument("no such patch among the next three");
    const int p = gs.circle[static_cast<std::size_t>(move.offset)];
    const catalog::Patch& patch = m.patches()[static_cast<std::size_t>(p)];
    if (patch.cost > me.buttons) throw std::invalid_argument("not enough buttons");
    if (!move.placement || !move.placement->assigned(m.vars(p).used) || move.placement->value(m.vars(p).used) != 1)
      throw std::invalid_argument("buy move without a placement of the patch");
    me.buttons -= patch.cost;
    me.board = *move.placement;
    me.income_rate += patch.income;
    me.covered += patch.size();
    std::vector<int> rotated(gs.circle.begin() + move.offset + 1, gs.circle.end());
    rotated.insert(rotated.end(), gs.circle.begin(), gs.circle.begin() + move.offset);
    next.circle = std::move(rotated);
    me.position = std::min(from + patch.time, kTrackEnd);
  }

  for (int spot : track.income_positions)
    if (spot > from && spot <= me.position) me.buttons += me.income_rate;

  for (std::size_t i = 0; i < track.special_positions.size(); ++i) {
    const int spot = track.special_positions[i];
    if (next.specials_taken[i] || spot <= from || spot > me.position) continue;
    next.specials_taken[i] = true;
    if (next.specials_awarded >= catalog::kSpecialPatches) continue;
    const int p = gs.context->special_index(next.specials_awarded++);
    auto outcome = strategies::try_place(m, me.board, p, *next.placer, ledger);
    if (outcome.placed) me.covered += 1;
  }

  if (next.bonus_owner < 0 && has_bonus_square(m, me.board)) next.bonus_owner = who;
  me.arrival = ++next.arrivals;
  ++me.plies;
  return next;
}

int score(const GameState& gs, int player) {
  const PlayerState& p = gs.players[static_cast<std::size_t>(player)];
  const int cells = gs.context->model().geometry().cells();
  return p.buttons - 2 * (cells - p.covered) + (gs.bonus_owner == player ? kBonusPoints : 0);
}

Move greedy_agent(const GameState& gs, strategies::Strategy& placement, StatsLedger& ledger) {
  if (gs.finished()) throw std::invalid_argument("the game is over");
  const PlayerState& me = gs.players[static_cast<std::size_t>(gs.mover())];
  const BoardModel& m = gs.context->model();
  const int spots = remaining_income_spots(gs, me.position);

  struct Candidate {
    int offset;
    double gain;
  };
  std::vector<Candidate> candidates;
  const int next = std::min<int>(3, static_cast<int>(gs.circle.size()));
  for (int k = 0; k < next; ++k) {
    const auto& patch = m.patches()[static_cast<std::size_t>(gs.circle[static_cast<std::size_t>(k)])];
    if (patch.cost > me.buttons) continue;
    if (auto g = gain(patch, me.position, spots)) candidates.push_back({k, *g});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.gain > b.gain; });

  const auto& d = placement.descriptor();
  for (const Candidate& c : candidates) {
    const int p = gs.circle[static_cast<std::size_t>(c.offset)];
    auto alts = strategies::generate(m, me.board, p, d.policy, ledger);
    if (alts.empty()) continue;
    const std::size_t chosen = strategies::evaluate(m, me.board, p, alts, d.evaluation.kind, &placement.rng());
    return {MoveKind::Buy, c.offset, std::move(alts[chosen].state)};
  }
  return Move::advance();
}

}  // namespace patchcp::game

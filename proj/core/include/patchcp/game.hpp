#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "patchcp/board.hpp"
#include "patchcp/catalog.hpp"
#include "patchcp/strategies.hpp"

namespace patchcp::game {

using board::BoardModel;
using kernel::SolverState;
using kernel::StatsLedger;

inline constexpr int kTrackEnd = 53;
inline constexpr int kStartButtons = 5;
inline constexpr int kBonusSide = 7;
inline constexpr int kBonusPoints = 7;

/// Shared, immutable game setup: the catalog and one board model over the 33
/// circle patches followed by the 5 specials, built once and copied into
/// every player board.
class GameContext {
 public:
  explicit GameContext(catalog::Catalog catalog);

  const catalog::Catalog& catalog() const { return catalog_; }
  const BoardModel& model() const { return *built_.model; }
  const SolverState& empty_board() const { return built_.root; }
  int special_index(int k) const { return catalog::kCirclePatches + k; }

 private:
  catalog::Catalog catalog_;
  board::BuiltModel built_;
};

struct PlayerState {
  int position = 0;
  int buttons = kStartButtons;
  int income_rate = 0;
  int covered = 0;
  int plies = 0;
  std::uint64_t arrival = 0;
  SolverState board{std::vector<kernel::Domain>{}};
};

struct GameState {
  std::shared_ptr<const GameContext> context;
  std::array<PlayerState, 2> players;
  /// Remaining circle patches (model indices); front is the patch right after
  /// the neutral marker.
  std::vector<int> circle;
  /// Per special track position, whether a player has already passed it.
  std::vector<bool> specials_taken;
  int specials_awarded = 0;
  int bonus_owner = -1;
  std::uint64_t arrivals = 0;
  strategies::StrategyDescriptor placement;
  std::shared_ptr<strategies::Strategy> placer;

  bool finished() const { return players[0].position >= kTrackEnd && players[1].position >= kTrackEnd; }
  /// Player furthest back; on a tie the one that arrived last.
  int mover() const;
};

enum class MoveKind { Advance, Buy };

struct Move {
  MoveKind kind = MoveKind::Advance;
  /// Offset into the next three circle patches.
  int offset = -1;
  /// Mover's board with the patch placed.
  std::optional<SolverState> placement;

  static Move advance() { return {}; }
};

/// Smallest circle patch (lowest id on ties) last in the circle, so the next
/// three are the first three of the other 32 shuffled by `seed`.
GameState new_game(std::shared_ptr<const GameContext> context, std::uint64_t seed,
                   strategies::StrategyDescriptor placement);

/// Advance plus one Buy per placement produced by the All policy for every
/// affordable patch among the next three. Empty once the game is finished.
std::vector<Move> legal_moves(const GameState& gs, StatsLedger& ledger);

/// Throws std::invalid_argument for a move that is not legal in `gs`.
GameState apply(const GameState& gs, const Move& move, StatsLedger& ledger);

/// (2S - C + I*B) / min(T, 53 - t); nullopt when the divisor is 0.
std::optional<double> gain(const catalog::Patch& patch, int t, int remaining_income_spots);

/// Income positions strictly ahead of `position`.
int remaining_income_spots(const GameState& gs, int position);

int score(const GameState& gs, int player);

/// Buys the affordable, placeable patch among the next three with the highest
/// gain (ties by circle order), placed by `placement`; otherwise advances.
Move greedy_agent(const GameState& gs, strategies::Strategy& placement, StatsLedger& ledger);

struct SelfplayStats {
  int games = 0;
  double mean_branching = 0.0;
  double mean_plies_p1 = 0.0;
  double mean_plies_p2 = 0.0;
  int wins_p1 = 0;
  int wins_p2 = 0;
  int draws = 0;
};

/// Both players use greedy_agent with `agent`; game g shuffles with stream g
/// of `seed`. One ledger is shared across all games.
SelfplayStats selfplay(std::shared_ptr<const GameContext> context, int games, std::uint64_t seed,
                       strategies::StrategyDescriptor agent);

inline strategies::StrategyDescriptor default_agent() {
  return {{strategies::PolicyBase::BL, strategies::TransformMode::Every}, {strategies::EvaluationKind::Regret, 0}};
}

}  // namespace patchcp::game

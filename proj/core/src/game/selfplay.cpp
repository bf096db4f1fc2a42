#include <stdexcept>

#include "patchcp/game.hpp"
#include "patchcp/rng.hpp"

namespace patchcp::game {

SelfplayStats selfplay(std::shared_ptr<const GameContext> context, int games, std::uint64_t seed,
                       strategies::StrategyDescriptor agent) {
  if (games < 1) throw std::invalid_argument("selfplay needs at least one game");
  SelfplayStats stats;
  stats.games = games;
  StatsLedger ledger;
  strategies::Strategy placer(agent);
  double branching = 0.0;
  long plies = 0;
  long plies_p1 = 0;
  long plies_p2 = 0;
  for (int g = 0; g < games; ++g) {
    GameState gs = new_game(context, Rng::stream(seed, static_cast<std::uint64_t>(g)).next(), agent);
    while (!gs.finished()) {
      branching += static_cast<double>(legal_moves(gs, ledger).size());
      ++plies;
      gs = apply(gs, greedy_agent(gs, placer, ledger), ledger);
    }
    plies_p1 += gs.players[0].plies;
    plies_p2 += gs.players[1].plies;
    const int a = score(gs, 0);
    const int b = score(gs, 1);
    if (a > b)
      ++stats.wins_p1;
    else if (b > a)
      ++stats.wins_p2;
    else
      ++stats.draws;
  }
  stats.mean_branching = branching / static_cast<double>(plies);
  stats.mean_plies_p1 = static_cast<double>(plies_p1) / games;
  stats.mean_plies_p2 = static_cast<double>(plies_p2) / games;
  return stats;
}

}  // namespace patchcp::game

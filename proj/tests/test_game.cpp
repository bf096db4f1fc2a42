#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "patchcp/game.hpp"

using namespace patchcp;
using namespace patchcp::game;

namespace {

std::shared_ptr<const GameContext> context() {
  static const auto ctx = std::make_shared<const GameContext>(catalog::builtin_catalog());
  return ctx;
}

const catalog::Patch& circle_patch(const GameState& gs, int offset) {
  return gs.context->model().patches()[static_cast<std::size_t>(gs.circle[static_cast<std::size_t>(offset)])];
}

int crossings(const std::vector<int>& spots, int from, int to) {
  return static_cast<int>(std::count_if(spots.begin(), spots.end(), [&](int s) { return s > from && s <= to; }));
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("gain") {
    const catalog::Patch p{0, catalog::Shape::from_rows({"###", "###"}), 2, 2, 0, false};
    CHECK(*gain(p, 0, 9) == doctest::Approx(5.0));
    catalog::Patch q = p;
    q.income = 1;
    CHECK(*gain(q, 10, 1) - *gain(q, 10, 0) == doctest::Approx(1.0 / 2));
    CHECK(*gain(q, 52, 1) - *gain(q, 52, 0) == doctest::Approx(1.0));
    CHECK_FALSE(gain(p, kTrackEnd, 0).has_value());
  }

  TEST_CASE("score") {
    GameState gs = new_game(context(), 1, default_agent());
    CHECK(score(gs, 0) == 5 - 2 * 9 * 9);
    CHECK(score(gs, 0) == -157);
    gs.players[1].covered = 81;
    gs.players[1].buttons = 10;
    gs.bonus_owner = 1;
    CHECK(score(gs, 1) == 17);
    CHECK(score(gs, 0) == -157);
  }

  TEST_CASE("new game setup") {
    const GameState gs = new_game(context(), 42, default_agent());
    const auto& cat = context()->catalog();
    REQUIRE(gs.circle.size() == 33);
    std::vector<int> sorted = gs.circle;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 33; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
    // the smallest patch sits just before the marker
    const auto& last = cat.circle[static_cast<std::size_t>(gs.circle.back())];
    for (const auto& p : cat.circle) CHECK(last.size() <= p.size());
    CHECK(new_game(context(), 42, default_agent()).circle == gs.circle);
    CHECK(new_game(context(), 43, default_agent()).circle != gs.circle);
    CHECK(gs.players[0].buttons == 5);
    CHECK(gs.players[1].position == 0);
    CHECK(gs.mover() == 0);
    CHECK_FALSE(gs.finished());
  }

  TEST_CASE("mover is the player behind, else the last to arrive") {
    GameState gs = new_game(context(), 1, default_agent());
    gs.players[0].position = 7;
    gs.players[1].position = 3;
    CHECK(gs.mover() == 1);
    gs.players[1].position = 7;
    gs.players[0].arrival = 4;
    gs.players[1].arrival = 5;
    CHECK(gs.mover() == 1);
    gs.players[0].arrival = 6;
    CHECK(gs.mover() == 0);
  }

  TEST_CASE("opening legal moves") {
    const GameState gs = new_game(context(), 5, default_agent());
    StatsLedger ledger;
    const auto moves = legal_moves(gs, ledger);
    std::size_t expected = 1;
    for (int k = 0; k < 3; ++k) {
      const auto& p = circle_patch(gs, k);
      if (p.cost > gs.players[0].buttons) continue;
      for (const auto& t : catalog::transforms(p.shape))
        expected += static_cast<std::size_t>((9 - t.shape.width() + 1) * (9 - t.shape.height() + 1));
    }
    CHECK(moves.size() == expected);
    CHECK(moves[0].kind == MoveKind::Advance);
    for (std::size_t i = 1; i < moves.size(); ++i) {
      CHECK(moves[i].kind == MoveKind::Buy);
      CHECK(moves[i].offset >= 0);
      CHECK(moves[i].offset < 3);
    }
  }

  TEST_CASE("advance pays one button per square and collects income") {
    GameState gs = new_game(context(), 2, default_agent());
    StatsLedger ledger;
    gs.players[0].position = 4;
    gs.players[0].income_rate = 2;
    gs.players[1].position = 12;
    const GameState next = apply(gs, Move::advance(), ledger);
    CHECK(next.players[0].position == 13);
    CHECK(next.players[0].buttons == 5 + 9 + 2 * 2);
    CHECK(next.players[0].plies == 1);
    CHECK(next.mover() == 1);
  }

  TEST_CASE("illegal buys are rejected") {
    GameState gs = new_game(context(), 3, default_agent());
    StatsLedger ledger;
    gs.players[0].buttons = 0;
    Move buy{MoveKind::Buy, 0, std::nullopt};
    if (circle_patch(gs, 0).cost > 0) CHECK_THROWS_AS(apply(gs, buy, ledger), std::invalid_argument);
    gs.players[0].buttons = 50;
    CHECK_THROWS_AS(apply(gs, buy, ledger), std::invalid_argument);
    buy.offset = 3;
    CHECK_THROWS_AS(apply(gs, buy, ledger), std::invalid_argument);
  }

  TEST_CASE("buying rotates the circle") {
    GameState gs = new_game(context(), 4, default_agent());
    gs.players[0].buttons = 50;
    StatsLedger ledger;
    const auto moves = legal_moves(gs, ledger);
    auto it = std::find_if(moves.begin(), moves.end(), [](const Move& m) { return m.offset == 1; });
    REQUIRE(it != moves.end());
    const GameState next = apply(gs, *it, ledger);
    REQUIRE(next.circle.size() == 32);
    CHECK(next.circle.front() == gs.circle[2]);
    CHECK(next.circle.back() == gs.circle[0]);
    const auto& p = circle_patch(gs, 1);
    CHECK(next.players[0].buttons ==
          50 - p.cost + p.income * crossings(context()->catalog().track.income_positions, 0, p.time));
    CHECK(next.players[0].position == p.time);
    CHECK(next.players[0].covered == p.size());
    CHECK(next.players[0].income_rate == p.income);
  }

  TEST_CASE("advance-only games") {
    GameState gs = new_game(context(), 6, default_agent());
    StatsLedger ledger;
    while (!gs.finished()) gs = apply(gs, Move::advance(), ledger);
    CHECK(gs.specials_awarded == 5);
    int specials = 0;
    for (int p = 0; p < 2; ++p) {
      CHECK(gs.players[static_cast<std::size_t>(p)].buttons == 5 + kTrackEnd);
      const int covered = gs.players[static_cast<std::size_t>(p)].covered;
      specials += covered;
      CHECK(score(gs, p) == -104 + 2 * covered);
    }
    CHECK(specials == 5);
    CHECK_THROWS_AS(apply(gs, Move::advance(), ledger), std::invalid_argument);
    CHECK(legal_moves(gs, ledger).empty());
  }

  TEST_CASE("greedy games keep the rules") {
    const auto& track = context()->catalog().track;
    StatsLedger ledger;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      GameState gs = new_game(context(), seed, default_agent());
      strategies::Strategy placer(default_agent());
      int plies = 0;
      int special_crossings = 0;
      while (!gs.finished()) {
        const int who = gs.mover();
        const PlayerState before = gs.players[static_cast<std::size_t>(who)];
        const Move move = greedy_agent(gs, placer, ledger);

        // the agent buys the best affordable placeable patch, otherwise advances
        int best = -1;
        double best_gain = 0;
        const int spots = remaining_income_spots(gs, before.position);
        for (int k = 0; k < std::min<int>(3, static_cast<int>(gs.circle.size())); ++k) {
          const auto& p = circle_patch(gs, k);
          if (p.cost > before.buttons) continue;
          auto alts = strategies::generate(gs.context->model(), before.board, gs.circle[static_cast<std::size_t>(k)],
                                           {strategies::PolicyBase::All, strategies::TransformMode::Every}, ledger);
          const auto g = gain(p, before.position, spots);
          if (alts.empty() || !g) continue;
          if (best < 0 || *g > best_gain) {
            best = k;
            best_gain = *g;
          }
        }
        if (best < 0) {
          CHECK(move.kind == MoveKind::Advance);
        } else {
          REQUIRE(move.kind == MoveKind::Buy);
          CHECK(*gain(circle_patch(gs, move.offset), before.position, spots) == doctest::Approx(best_gain));
        }

        const GameState next = apply(gs, move, ledger);
        const PlayerState& after = next.players[static_cast<std::size_t>(who)];
        CHECK(after.position >= before.position);
        int expected = before.buttons;
        if (move.kind == MoveKind::Advance) {
          expected += after.position - before.position;
        } else {
          expected -= circle_patch(gs, move.offset).cost;
        }
        expected += after.income_rate * crossings(track.income_positions, before.position, after.position);
        CHECK(after.buttons == expected);
        CHECK(after.buttons >= 0);
        for (std::size_t i = 0; i < track.special_positions.size(); ++i) {
          const int spot = track.special_positions[i];
          special_crossings += !gs.specials_taken[i] && spot > before.position && spot <= after.position;
        }
        CHECK(next.players[static_cast<std::size_t>(1 - who)].buttons == gs.players[static_cast<std::size_t>(1 - who)].buttons);
        gs = next;
        ++plies;
      }
      CHECK(plies <= 2 * kTrackEnd + 33);
      CHECK(plies == gs.players[0].plies + gs.players[1].plies);
      CHECK(gs.specials_awarded == std::min(5, special_crossings));

      int income = 0;
      int covered = 0;
      const auto& m = gs.context->model();
      const auto& board = gs.players[0].board;
      for (int p = 0; p < m.patch_count(); ++p) {
        if (!board.assigned(m.vars(p).used) || board.value(m.vars(p).used) == 0) continue;
        income += m.patches()[static_cast<std::size_t>(p)].income;
        covered += m.patches()[static_cast<std::size_t>(p)].size();
      }
      CHECK(income == gs.players[0].income_rate);
      CHECK(covered == gs.players[0].covered);
    }
  }

  TEST_CASE("selfplay is deterministic") {
    const auto a = selfplay(context(), 2, 9, default_agent());
    const auto b = selfplay(context(), 2, 9, default_agent());
    CHECK(a.mean_branching == b.mean_branching);
    CHECK(a.mean_plies_p1 == b.mean_plies_p1);
    CHECK(a.wins_p1 == b.wins_p1);
    CHECK(a.wins_p1 + a.wins_p2 + a.draws == 2);
    CHECK(a.mean_branching >= 1.0);
    CHECK_THROWS_AS(selfplay(context(), 0, 9, default_agent()), std::invalid_argument);
  }
}

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "patchcp/board.hpp"
#include "patchcp/catalog.hpp"
#include "patchcp/game.hpp"
#include "patchcp/strategies.hpp"

namespace patchcp::harness {

using Order = std::vector<int>;

/// n permutations of the circle patch ids 0..count-1; order i is a
/// Fisher-Yates shuffle driven by stream i of `seed`.
std::vector<Order> random_orders(int n, std::uint64_t seed, int count = catalog::kCirclePatches);

struct OrderResult {
  int area = 0;
  int streak = 0;
  int placed = 0;
  double time_ms = 0.0;
  /// Summed over the successful placements.
  std::size_t alternatives = 0;
  int attempts = 0;
};

/// Places the patches of `order` (circle ids) one by one on a copy of the
/// root of `built`, continuing after failures.
OrderResult pack_order(const board::BuiltModel& built, const Order& order, strategies::Strategy& strategy,
                       kernel::StatsLedger& ledger);

struct MetricsRow {
  std::string policy;
  std::string transforms;
  std::string eval;
  double area_mean = 0.0;
  double streak_mean = 0.0;
  double time_ms_mean = 0.0;
  double alts_mean = 0.0;
};

struct BenchConfig {
  int orders = 1000;
  std::uint64_t seed = 1;
  std::vector<strategies::StrategyDescriptor> strategies;
};

/// Called after every finished order of a strategy.
using Progress = std::function<void(std::size_t strategy, int order)>;

/// One row per strategy. Alternatives are averaged over the successful
/// placements of each order. Each strategy gets its own ledger, kept across
/// all of its orders, and a Random stream derived from the config seed
/// unless the descriptor carries a non-zero seed.
std::vector<MetricsRow> run_packing(const BenchConfig& config, const catalog::Catalog& catalog,
                                    const Progress& progress = {});

/// The 17 policy columns by the 7 evaluations of the packing table.
std::vector<strategies::StrategyDescriptor> table_grid();

game::SelfplayStats run_selfplay(int games, std::uint64_t seed, const catalog::Catalog& catalog);

std::string write_csv(const std::vector<MetricsRow>& rows);
std::string write_markdown(const std::vector<MetricsRow>& rows);
std::string write_selfplay(const game::SelfplayStats& stats);

}  // namespace patchcp::harness

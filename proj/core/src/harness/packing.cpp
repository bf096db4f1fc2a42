#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "patchcp/harness.hpp"
#include "patchcp/rng.hpp"

namespace patchcp::harness {

using strategies::EvaluationKind;
using strategies::PolicyBase;
using strategies::TransformMode;

std::vector<Order> random_orders(int n, std::uint64_t seed, int count) {
  if (n < 1) throw std::invalid_argument("need at least one order");
  std::vector<Order> out;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    Order o(static_cast<std::size_t>(count));
    std::iota(o.begin(), o.end(), 0);
    for (std::size_t k = o.size(); k > 1; --k) std::swap(o[k - 1], o[rng.below(k)]);
    out.push_back(std::move(o));
  }
  return out;
}

OrderResult pack_order(const board::BuiltModel& built, const Order& order, strategies::Strategy& strategy,
                       kernel::StatsLedger& ledger) {
  const board::BoardModel& m = *built.model;
  kernel::SolverState state = built.root.snapshot();
  OrderResult r;
  bool failed = false;
  for (int id : order) {
    const int p = m.local_index(id);
    if (p < 0) throw std::invalid_argument("patch " + std::to_string(id) + " is not in the model");
    auto outcome = strategies::try_place(m, state, p, strategy, ledger);
    ++r.attempts;
    r.time_ms += outcome.elapsed_ms;
    if (outcome.placed) {
      ++r.placed;
      r.alternatives += outcome.alternatives;
      r.area += m.patches()[static_cast<std::size_t>(p)].size();
      if (!failed) ++r.streak;
    } else {
      failed = true;
    }
  }
  return r;
}

std::vector<MetricsRow> run_packing(const BenchConfig& config, const catalog::Catalog& catalog,
                                    const Progress& progress) {
  std::vector<MetricsRow> rows;
  if (config.strategies.empty()) return rows;
  const auto orders = random_orders(config.orders, config.seed);
  const board::BuiltModel built = board::build_model(catalog.circle);
  for (std::size_t si = 0; si < config.strategies.size(); ++si) {
    strategies::StrategyDescriptor d = config.strategies[si];
    if (d.evaluation.seed == 0) {
      std::uint64_t s = config.seed ^ 0x5eed5eed5eed5eedULL;
      d.evaluation.seed = splitmix64(s);
    }
    strategies::Strategy strategy(d);
    kernel::StatsLedger ledger;
    double area = 0, streak = 0, time = 0, alts = 0;
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
      const OrderResult r = pack_order(built, orders[oi], strategy, ledger);
      area += r.area;
      streak += r.streak;
      time += r.time_ms / r.attempts;
      if (r.placed > 0) alts += static_cast<double>(r.alternatives) / r.placed;
      if (progress) progress(si, static_cast<int>(oi));
    }
    const double n = static_cast<double>(orders.size());
    rows.push_back({std::string(strategies::name(d.policy.base)), std::string(strategies::name(d.policy.mode)),
                    std::string(strategies::name(d.evaluation.kind)), area / n, streak / n, time / n, alts / n});
  }
  return rows;
}

std::vector<strategies::StrategyDescriptor> table_grid() {
  const PolicyBase bases[] = {PolicyBase::InOrder, PolicyBase::Size, PolicyBase::AFC,     PolicyBase::Action,
                              PolicyBase::SumCHB,  PolicyBase::BL,   PolicyBase::BLLB,    PolicyBase::ParetoBL};
  const EvaluationKind evals[] = {EvaluationKind::First, EvaluationKind::Random, EvaluationKind::Left,
                                  EvaluationKind::Bottom, EvaluationKind::Area, EvaluationKind::Regret,
                                  EvaluationKind::ReverseRegret};
  std::vector<strategies::StrategyDescriptor> out;
  for (EvaluationKind e : evals) {
    for (PolicyBase b : bases)
      for (TransformMode m : {TransformMode::Some, TransformMode::Every}) out.push_back({{b, m}, {e, 0}});
    out.push_back({{PolicyBase::All, TransformMode::Every}, {e, 0}});
  }
  return out;
}

game::SelfplayStats run_selfplay(int games, std::uint64_t seed, const catalog::Catalog& catalog) {
  if (games < 1) throw std::invalid_argument("selfplay needs at least one game");
  auto context = std::make_shared<const game::GameContext>(catalog);
  return game::selfplay(context, games, seed, game::default_agent());
}

}  // namespace patchcp::harness

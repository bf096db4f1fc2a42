#include <benchmark/benchmark.h>

#include "patchcp/automata.hpp"
#include "patchcp/catalog.hpp"
#include "patchcp/harness.hpp"

using namespace patchcp;
using strategies::EvaluationKind;
using strategies::PolicyBase;
using strategies::TransformMode;

namespace {

const board::BuiltModel& circle_model() {
  static const board::BuiltModel built = board::build_model(catalog::builtin_catalog().circle);
  return built;
}

void BM_CompilePlacementLanguage(benchmark::State& state) {
  const auto& patch = catalog::builtin_catalog().circle[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    auto dfa = automata::compile_minimal(catalog::reified_patch_language(patch), 2);
    benchmark::DoNotOptimize(dfa);
  }
}
BENCHMARK(BM_CompilePlacementLanguage)->Arg(0)->Arg(20);

void BM_BuildModel(benchmark::State& state) {
  const auto& circle = catalog::builtin_catalog().circle;
  for (auto _ : state) {
    auto built = board::build_model(circle);
    benchmark::DoNotOptimize(built);
  }
}
BENCHMARK(BM_BuildModel)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  const auto& built = circle_model();
  const strategies::PolicyDescriptor policy{static_cast<PolicyBase>(state.range(0)), TransformMode::Every};
  kernel::StatsLedger ledger;
  std::size_t alts = 0;
  for (auto _ : state) {
    auto out = strategies::generate(*built.model, built.root, 5, policy, ledger);
    alts = out.size();
    benchmark::DoNotOptimize(out);
  }
  state.counters["alternatives"] = static_cast<double>(alts);
}
BENCHMARK(BM_Generate)
    ->Arg(static_cast<int>(PolicyBase::BL))
    ->Arg(static_cast<int>(PolicyBase::ParetoBL))
    ->Arg(static_cast<int>(PolicyBase::All))
    ->Unit(benchmark::kMillisecond);

void BM_PackOrder(benchmark::State& state) {
  const auto& built = circle_model();
  const auto order = harness::random_orders(1, 3)[0];
  strategies::Strategy strategy({{static_cast<PolicyBase>(state.range(0)), TransformMode::Every}, {EvaluationKind::Regret, 0}});
  kernel::StatsLedger ledger;
  for (auto _ : state) {
    auto r = harness::pack_order(built, order, strategy, ledger);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PackOrder)
    ->Arg(static_cast<int>(PolicyBase::BL))
    ->Arg(static_cast<int>(PolicyBase::All))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

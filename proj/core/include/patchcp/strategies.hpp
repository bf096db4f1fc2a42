#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patchcp/board.hpp"
#include "patchcp/kernel/ledger.hpp"
#include "patchcp/rng.hpp"

namespace patchcp::strategies {

using board::BoardModel;
using kernel::SolverState;
using kernel::StatsLedger;

enum class PolicyBase { InOrder, Size, AFC, Action, CHB, SumAFC, SumAction, SumCHB, BL, BLLB, ParetoBL, All };
enum class TransformMode { Some, Every };
enum class EvaluationKind { First, Random, Left, Bottom, Area, Regret, ReverseRegret };

struct PolicyDescriptor {
  PolicyBase base = PolicyBase::BL;
  TransformMode mode = TransformMode::Some;

  bool operator==(const PolicyDescriptor&) const = default;
};

struct EvaluationDescriptor {
  EvaluationKind kind = EvaluationKind::First;
  std::uint64_t seed = 0;

  bool operator==(const EvaluationDescriptor&) const = default;
};

struct StrategyDescriptor {
  PolicyDescriptor policy;
  EvaluationDescriptor evaluation;

  bool operator==(const StrategyDescriptor&) const = default;
};

std::string_view name(PolicyBase b);
std::string_view name(TransformMode m);
std::string_view name(EvaluationKind k);
/// Case-insensitive; nullopt for unknown names.
std::optional<PolicyBase> parse_policy(std::string_view s);
std::optional<TransformMode> parse_transforms(std::string_view s);
std::optional<EvaluationKind> parse_evaluation(std::string_view s);

struct PlacementAlternative {
  SolverState state;
  int right_extent = -1;
  int top_extent = -1;
  int bb_area_increase = 0;
  /// Filled in by evaluate when a regret evaluation needs it.
  std::optional<long> pggr_value;
};

/// Candidate placements of patch p (local index) in `state`. An empty result
/// means the policy found no placement.
std::vector<PlacementAlternative> generate(const BoardModel& m, const SolverState& state, int p,
                                           PolicyDescriptor policy, StatsLedger& ledger);

/// Propagation guided global regret: over the main cells, the domain-size
/// loss between `before` and `after`, skipping cells fixed in `before` and
/// cells that `after` assigns to p.
long pggr(const BoardModel& m, const SolverState& before, const SolverState& after, int p);

/// Index of the chosen alternative; ties go to the lowest index. Random
/// draws from `rng`. Throws std::invalid_argument on an empty list or a
/// Random evaluation without a generator.
std::size_t evaluate(const BoardModel& m, const SolverState& before, int p,
                     std::vector<PlacementAlternative>& alternatives, EvaluationKind kind, Rng* rng = nullptr);

/// A policy/evaluation pair with the random stream of its evaluation.
class Strategy {
 public:
  explicit Strategy(StrategyDescriptor d) : descriptor_(d), rng_(d.evaluation.seed) {}

  const StrategyDescriptor& descriptor() const { return descriptor_; }
  Rng& rng() { return rng_; }

 private:
  StrategyDescriptor descriptor_;
  Rng rng_;
};

struct PlacementOutcome {
  bool placed = false;
  std::size_t alternatives = 0;
  double elapsed_ms = 0.0;
};

/// Generates, evaluates and adopts the chosen placement into `state`. When
/// nothing is generated the patch is marked unused instead. Throws
/// std::logic_error if that fails.
PlacementOutcome try_place(const BoardModel& m, SolverState& state, int p, Strategy& strategy, StatsLedger& ledger);

}  // namespace patchcp::strategies

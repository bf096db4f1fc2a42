#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "patchcp/kernel/domain.hpp"
#include "patchcp/kernel/ledger.hpp"
#include "patchcp/kernel/propagators.hpp"

namespace patchcp::kernel {

enum class Status { Open, AtFixpoint, Failed, Solved };

const char* to_string(Status s);

class Propagator;
struct PropagatorStore;
class PropagationContext;

/// Variable domains plus the posted propagators. States are values: copying
/// one (see snapshot) yields an independent state that shares the immutable
/// propagator objects. Restoration on backtracking is done by discarding
/// copies; there is no trail.
class SolverState {
 public:
  /// Throws std::invalid_argument if any domain is empty.
  explicit SolverState(std::vector<Domain> domains);

  std::size_t var_count() const { return domains_.size(); }
  const Domain& domain(VarRef v) const { return domains_[v.index]; }
  std::span<const Domain> domains() const { return domains_; }
  Status status() const { return status_; }
  bool failed() const { return status_ == Status::Failed; }

  /// Registers and schedules a propagator; the state becomes Open.
  /// Throws std::invalid_argument on malformed descriptors, including a
  /// Regular whose automaton alphabet does not cover an attached domain.
  /// Returns the propagator id used by the ledger.
  std::uint32_t post(PropagatorDescriptor descriptor);

  /// Runs scheduled propagators (FIFO) to a common fixpoint.
  /// Returns AtFixpoint, Solved (fixpoint with every domain a singleton) or
  /// Failed. A failed state can only be discarded.
  Status propagate(StatsLedger& ledger);

  /// Narrow to {value}; an absent value fails the state immediately.
  void assign(VarRef v, int value);
  /// Remove value; a no-op when absent. Removing the last value fails.
  void exclude(VarRef v, int value);
  /// Intersect with the given domain.
  void restrict(VarRef v, Domain d);

  SolverState snapshot() const { return *this; }

  std::size_t propagator_count() const;
  std::span<const std::uint32_t> subscribers(VarRef v) const;
  const PropagatorDescriptor& descriptor(std::uint32_t propagator) const;

  bool all_assigned() const;
  bool assigned(VarRef v) const { return domains_[v.index].assigned(); }
  int value(VarRef v) const { return domains_[v.index].value(); }

 private:
  friend class PropagationContext;

  void schedule_subscribers(VarRef v, std::uint32_t except);
  void narrow_and_schedule(VarRef v, std::uint64_t mask);

  std::vector<Domain> domains_;
  std::shared_ptr<PropagatorStore> store_;
  std::vector<std::uint32_t> queue_;
  std::size_t head_ = 0;
  std::vector<std::uint8_t> queued_;
  Status status_ = Status::Open;
};

inline SolverState build_state(std::vector<Domain> domains) { return SolverState(std::move(domains)); }

}  // namespace patchcp::kernel

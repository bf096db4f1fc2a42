#pragma once

// Internal propagator interface shared by the kernel translation units.

#include <memory>
#include <vector>

#include "patchcp/kernel/ledger.hpp"
#include "patchcp/kernel/state.hpp"

namespace patchcp::kernel {

class PropagationContext {
 public:
  PropagationContext(SolverState& state, StatsLedger& ledger) : state_(state), ledger_(ledger) {}

  void set_current(std::uint32_t id) { current_ = id; }

  const Domain& dom(VarRef v) const { return state_.domains_[v.index]; }

  /// Intersects the domain of v with mask. Returns false on wipe-out.
  bool restrict(VarRef v, std::uint64_t mask) {
    Domain& d = state_.domains_[v.index];
    const std::uint64_t old = d.bits();
    const std::uint64_t nb = old & mask;
    if (nb == old) return true;
    d = Domain::from_bits(nb);
    if (nb == 0) return false;
    ledger_.record_prune(v);
    state_.schedule_subscribers(v, current_);
    return true;
  }
  bool assign(VarRef v, int value) { return restrict(v, Domain::bit(value)); }
  bool remove(VarRef v, int value) { return restrict(v, ~Domain::bit(value)); }
  bool bounds(VarRef v, int lo, int hi) { return restrict(v, range_bits(lo, hi)); }

 private:
  SolverState& state_;
  StatsLedger& ledger_;
  std::uint32_t current_ = 0;
};

class Propagator {
 public:
  explicit Propagator(PropagatorDescriptor d) : descriptor_(std::move(d)) {}
  virtual ~Propagator() = default;

  /// Runs to this propagator's own fixpoint. Returns false on failure.
  virtual bool propagate(PropagationContext& ctx) const = 0;
  virtual std::vector<VarRef> variables() const = 0;

  const PropagatorDescriptor& descriptor() const { return descriptor_; }

 private:
  PropagatorDescriptor descriptor_;
};

struct PropagatorStore {
  std::vector<std::shared_ptr<const Propagator>> propagators;
  std::vector<std::vector<std::uint32_t>> subscribers;
};

/// Validates the descriptor against the current domains and builds the
/// propagator. Throws std::invalid_argument when malformed.
std::shared_ptr<const Propagator> make_propagator(const PropagatorDescriptor& d, std::span<const Domain> domains);

std::shared_ptr<const Propagator> make_regular(const Regular& d, std::span<const Domain> domains);

}  // namespace patchcp::kernel

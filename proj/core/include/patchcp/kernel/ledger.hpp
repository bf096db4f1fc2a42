#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "patchcp/kernel/domain.hpp"

namespace patchcp::kernel {

/// Statistics feeding the learning heuristics (AFC, action, CHB). One ledger
/// is shared by every state of a run; it is keyed by propagator ids and
/// VarRefs, which are stable across snapshots.
///
/// AFC counts start at 1.0 and never decay. Action counts one per domain
/// narrowing made by a propagator. CHB follows the conflict-history scheme:
/// q starts at 0.05 and moves towards m / (conflicts - lastConflict + 1)
/// with step alpha, where m is 1.0 when the enclosing propagation failed and
/// 0.9 otherwise; alpha starts at 0.4 and loses 1e-6 per update down to 0.06.
class StatsLedger {
 public:
  static constexpr double kAfcInit = 1.0;
  static constexpr double kChbInit = 0.05;
  static constexpr double kAlphaInit = 0.4;
  static constexpr double kAlphaStep = 1e-6;
  static constexpr double kAlphaFloor = 0.06;

  double afc(std::uint32_t propagator) const {
    return propagator < afc_.size() ? afc_[propagator] : kAfcInit;
  }
  double action(VarRef v) const { return v.index < action_.size() ? action_[v.index] : 0.0; }
  double chb(VarRef v) const { return v.index < chb_q_.size() ? chb_q_[v.index] : kChbInit; }
  std::int64_t last_conflict(VarRef v) const { return v.index < last_conflict_.size() ? last_conflict_[v.index] : 0; }
  std::uint64_t conflicts() const { return conflicts_; }
  double alpha() const { return alpha_; }

  // Recording hooks used by propagation.
  void reserve(std::size_t vars, std::size_t propagators);
  void record_prune(VarRef v) {
    action_[v.index] += 1.0;
    if (touched_stamp_[v.index] != epoch_) {
      touched_stamp_[v.index] = epoch_;
      touched_.push_back(v.index);
    }
  }
  void record_failure(std::uint32_t propagator) {
    afc_[propagator] += 1.0;
    ++conflicts_;
  }
  void begin_propagation() {
    ++epoch_;
    touched_.clear();
  }
  /// Applies the CHB update for every variable pruned since begin_propagation.
  void end_propagation(bool failed);

 private:
  std::vector<double> afc_;
  std::vector<double> action_;
  std::vector<double> chb_q_;
  std::vector<std::int64_t> last_conflict_;
  std::vector<std::uint32_t> touched_stamp_;
  std::vector<std::uint32_t> touched_;
  std::uint32_t epoch_ = 0;
  std::uint64_t conflicts_ = 0;
  double alpha_ = kAlphaInit;
};

}  // namespace patchcp::kernel

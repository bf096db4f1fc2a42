#include <algorithm>

#include "patchcp/kernel/ledger.hpp"

namespace patchcp::kernel {

void StatsLedger::reserve(std::size_t vars, std::size_t propagators) {
  if (afc_.size() < propagators) afc_.resize(propagators, kAfcInit);
  if (action_.size() < vars) {
    action_.resize(vars, 0.0);
    chb_q_.resize(vars, kChbInit);
    last_conflict_.resize(vars, 0);
    touched_stamp_.resize(vars, 0);
  }
}

void StatsLedger::end_propagation(bool failed) {
  const double m = failed ? 1.0 : 0.9;
  const auto now = static_cast<std::int64_t>(conflicts_);
  for (std::uint32_t v : touched_) {
    double reward = m / static_cast<double>(now - last_conflict_[v] + 1);
    chb_q_[v] = (1.0 - alpha_) * chb_q_[v] + alpha_ * reward;
    alpha_ = std::max(kAlphaFloor, alpha_ - kAlphaStep);
    if (failed) last_conflict_[v] = now;
  }
  touched_.clear();
}

}  // namespace patchcp::kernel

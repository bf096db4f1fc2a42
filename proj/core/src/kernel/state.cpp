#include <algorithm>
#include <stdexcept>
#include <string>

#include "kernel/propagator.hpp"

namespace patchcp::kernel {

const char* to_string(Status s) {
  switch (s) {
    case Status::Open:
      return "Open";
    case Status::AtFixpoint:
      return "AtFixpoint";
    case Status::Failed:
      return "Failed";
    case Status::Solved:
      return "Solved";
  }
  return "?";
}

SolverState::SolverState(std::vector<Domain> domains)
    : domains_(std::move(domains)), store_(std::make_shared<PropagatorStore>()) {
  for (std::size_t i = 0; i < domains_.size(); ++i)
    if (domains_[i].empty()) throw std::invalid_argument("empty domain for variable " + std::to_string(i));
  store_->subscribers.resize(domains_.size());
}

std::uint32_t SolverState::post(PropagatorDescriptor descriptor) {
  if (status_ == Status::Failed) throw std::logic_error("cannot post to a failed state");
  auto prop = make_propagator(descriptor, domains_);
  if (store_.use_count() > 1) store_ = std::make_shared<PropagatorStore>(*store_);
  const auto id = static_cast<std::uint32_t>(store_->propagators.size());
  std::vector<VarRef> vars = prop->variables();
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (VarRef v : vars) store_->subscribers[v.index].push_back(id);
  store_->propagators.push_back(std::move(prop));
  queued_.push_back(1);
  queue_.push_back(id);
  status_ = Status::Open;
  return id;
}

std::size_t SolverState::propagator_count() const { return store_->propagators.size(); }

std::span<const std::uint32_t> SolverState::subscribers(VarRef v) const { return store_->subscribers[v.index]; }

const PropagatorDescriptor& SolverState::descriptor(std::uint32_t propagator) const {
  return store_->propagators.at(propagator)->descriptor();
}

bool SolverState::all_assigned() const {
  return std::all_of(domains_.begin(), domains_.end(), [](const Domain& d) { return d.assigned(); });
}

void SolverState::schedule_subscribers(VarRef v, std::uint32_t except) {
  for (std::uint32_t p : store_->subscribers[v.index]) {
    if (p == except || queued_[p]) continue;
    queued_[p] = 1;
    queue_.push_back(p);
  }
}

void SolverState::narrow_and_schedule(VarRef v, std::uint64_t mask) {
  if (status_ == Status::Failed) return;
  if (v.index >= domains_.size()) throw std::out_of_range("variable " + std::to_string(v.index) + " does not exist");
  Domain& d = domains_[v.index];
  const std::uint64_t nb = d.bits() & mask;
  if (nb == d.bits()) return;
  d = Domain::from_bits(nb);
  if (nb == 0) {
    status_ = Status::Failed;
    return;
  }
  schedule_subscribers(v, static_cast<std::uint32_t>(-1));
  status_ = Status::Open;
}

void SolverState::assign(VarRef v, int value) {
  if (value < 0 || value > Domain::kMaxValue) {
    status_ = Status::Failed;
    return;
  }
  narrow_and_schedule(v, Domain::bit(value));
}

void SolverState::exclude(VarRef v, int value) {
  if (value < 0 || value > Domain::kMaxValue) return;
  narrow_and_schedule(v, ~Domain::bit(value));
}

void SolverState::restrict(VarRef v, Domain d) { narrow_and_schedule(v, d.bits()); }

Status SolverState::propagate(StatsLedger& ledger) {
  if (status_ == Status::Failed) return status_;
  const auto& props = store_->propagators;
  ledger.reserve(domains_.size(), props.size());
  ledger.begin_propagation();
  PropagationContext ctx(*this, ledger);
  while (head_ < queue_.size()) {
    const std::uint32_t id = queue_[head_++];
    queued_[id] = 0;
    ctx.set_current(id);
    if (!props[id]->propagate(ctx)) {
      ledger.record_failure(id);
      ledger.end_propagation(true);
      for (std::size_t i = head_; i < queue_.size(); ++i) queued_[queue_[i]] = 0;
      queue_.clear();
      head_ = 0;
      status_ = Status::Failed;
      return status_;
    }
  }
  queue_.clear();
  head_ = 0;
  ledger.end_propagation(false);
  status_ = all_assigned() ? Status::Solved : Status::AtFixpoint;
  return status_;
}

}  // namespace patchcp::kernel

#include <stdexcept>
#include <string>

#include "kernel/propagator.hpp"

namespace patchcp::kernel {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int clamp_value(long long v) {
  if (v < -1) return -1;
  if (v > Domain::kMaxValue + 1) return Domain::kMaxValue + 1;
  return static_cast<int>(v);
}

class LinearEqProp final : public Propagator {
 public:
  explicit LinearEqProp(LinearEq d) : Propagator(d), d_(std::move(d)) {}

  bool propagate(PropagationContext& ctx) const override {
    const std::size_t n = d_.vars.size();
    for (bool changed = true; changed;) {
      changed = false;
      long long lo_sum = 0, hi_sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Domain& dom = ctx.dom(d_.vars[i]);
        const long long c = d_.coeffs[i];
        lo_sum += c > 0 ? c * dom.min() : c * dom.max();
        hi_sum += c > 0 ? c * dom.max() : c * dom.min();
      }
      if (lo_sum > d_.constant || hi_sum < d_.constant) return false;
      for (std::size_t i = 0; i < n; ++i) {
        const long long c = d_.coeffs[i];
        if (c == 0) continue;
        const VarRef v = d_.vars[i];
        const Domain before = ctx.dom(v);
        const long long term_lo = c > 0 ? c * before.min() : c * before.max();
        const long long term_hi = c > 0 ? c * before.max() : c * before.min();
        const long long lo = d_.constant - (hi_sum - term_hi);
        const long long hi = d_.constant - (lo_sum - term_lo);
        long long xlo, xhi;
        if (c > 0) {
          xlo = ceil_div(lo, c);
          xhi = floor_div(hi, c);
        } else {
          xlo = ceil_div(hi, c);
          xhi = floor_div(lo, c);
        }
        if (!ctx.bounds(v, clamp_value(xlo), clamp_value(xhi))) return false;
        if (ctx.dom(v) != before) {
          changed = true;
          break;
        }
      }
    }
    return true;
  }

  std::vector<VarRef> variables() const override { return d_.vars; }

 private:
  LinearEq d_;
};

class BoolSumProp final : public Propagator {
 public:
  explicit BoolSumProp(BoolSum d) : Propagator(d), d_(std::move(d)) {}

  bool propagate(PropagationContext& ctx) const override {
    int ones = 0, possible = 0;
    for (VarRef v : d_.vars) {
      const Domain& dom = ctx.dom(v);
      if (dom.contains(1)) {
        ++possible;
        if (!dom.contains(0)) ++ones;
      }
    }
    if (!ctx.bounds(d_.result, ones, possible)) return false;
    const Domain& r = ctx.dom(d_.result);
    if (ones == possible) return true;
    if (r.max() == ones) {
      for (VarRef v : d_.vars)
        if (!ctx.dom(v).assigned() && !ctx.assign(v, 0)) return false;
    } else if (r.min() == possible) {
      for (VarRef v : d_.vars)
        if (!ctx.dom(v).assigned() && !ctx.assign(v, 1)) return false;
    }
    return true;
  }

  std::vector<VarRef> variables() const override {
    auto vars = d_.vars;
    vars.push_back(d_.result);
    return vars;
  }

 private:
  BoolSum d_;
};

class ReifiedIntEqProp final : public Propagator {
 public:
  explicit ReifiedIntEqProp(ReifiedIntEq d) : Propagator(d), d_(d) {}

  bool propagate(PropagationContext& ctx) const override {
    const Domain& b = ctx.dom(d_.b);
    if (b.assigned()) {
      if (b.value() == 1) return ctx.assign(d_.x, d_.value);
      return ctx.remove(d_.x, d_.value);
    }
    const Domain& x = ctx.dom(d_.x);
    if (!x.contains(d_.value)) return ctx.assign(d_.b, 0);
    if (x.assigned()) return ctx.assign(d_.b, 1);
    return true;
  }

  std::vector<VarRef> variables() const override { return {d_.b, d_.x}; }

 private:
  ReifiedIntEq d_;
};

class AndChainProp final : public Propagator {
 public:
  explicit AndChainProp(AndChain d) : Propagator(d), d_(d) {}

  bool propagate(PropagationContext& ctx) const override {
    for (int round = 0; round < 3; ++round) {
      const Domain p = ctx.dom(d_.prev), z = ctx.dom(d_.z), f = ctx.dom(d_.f);
      if (!p.contains(1) || !z.contains(1)) {
        if (!ctx.assign(d_.f, 0)) return false;
      } else if (!p.contains(0) && !z.contains(0)) {
        if (!ctx.assign(d_.f, 1)) return false;
      }
      if (!f.contains(0)) {
        if (!ctx.assign(d_.prev, 1) || !ctx.assign(d_.z, 1)) return false;
      } else if (!f.contains(1)) {
        if (!p.contains(0) && !ctx.assign(d_.z, 0)) return false;
        if (!z.contains(0) && !ctx.assign(d_.prev, 0)) return false;
      }
      if (p == ctx.dom(d_.prev) && z == ctx.dom(d_.z) && f == ctx.dom(d_.f)) break;
    }
    return true;
  }

  std::vector<VarRef> variables() const override { return {d_.prev, d_.z, d_.f}; }

 private:
  AndChain d_;
};

class CellChannelProp final : public Propagator {
 public:
  explicit CellChannelProp(CellChannel d) : Propagator(d), d_(std::move(d)) {}

  bool propagate(PropagationContext& ctx) const override {
    const int n = static_cast<int>(d_.bools.size());
    std::uint64_t keep = ~std::uint64_t{0};
    int forced = -1;
    bool all_zero_ok = true;
    for (int p = 0; p < n; ++p) {
      const Domain& b = ctx.dom(d_.bools[static_cast<std::size_t>(p)]);
      if (!b.contains(1)) keep &= ~Domain::bit(p);
      if (!b.contains(0)) {
        if (forced >= 0) return false;
        forced = p;
        all_zero_ok = false;
      }
    }
    if (!all_zero_ok) keep &= ~Domain::bit(d_.empty_value);
    if (forced >= 0) keep &= Domain::bit(forced);
    if (!ctx.restrict(d_.cell, keep)) return false;

    const Domain cell = ctx.dom(d_.cell);
    for (int p = 0; p < n; ++p) {
      const VarRef b = d_.bools[static_cast<std::size_t>(p)];
      if (!cell.contains(p)) {
        if (!ctx.assign(b, 0)) return false;
      } else if (cell.assigned()) {
        if (!ctx.assign(b, 1)) return false;
      }
    }
    return true;
  }

  std::vector<VarRef> variables() const override {
    auto vars = d_.bools;
    vars.push_back(d_.cell);
    return vars;
  }

 private:
  CellChannel d_;
};

void check_var(VarRef v, std::span<const Domain> domains, const char* what) {
  if (v.index >= domains.size())
    throw std::invalid_argument(std::string(what) + ": variable " + std::to_string(v.index) + " does not exist");
}

}  // namespace

std::shared_ptr<const Propagator> make_propagator(const PropagatorDescriptor& descriptor,
                                                  std::span<const Domain> domains) {
  return std::visit(
      [&](const auto& d) -> std::shared_ptr<const Propagator> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Regular>) {
          return make_regular(d, domains);
        } else if constexpr (std::is_same_v<T, LinearEq>) {
          if (d.vars.empty()) throw std::invalid_argument("LinearEq: empty variable sequence");
          if (d.coeffs.size() != d.vars.size()) throw std::invalid_argument("LinearEq: coefficient count mismatch");
          for (VarRef v : d.vars) check_var(v, domains, "LinearEq");
          return std::make_shared<LinearEqProp>(d);
        } else if constexpr (std::is_same_v<T, BoolSum>) {
          if (d.vars.empty()) throw std::invalid_argument("BoolSum: empty variable sequence");
          for (VarRef v : d.vars) {
            check_var(v, domains, "BoolSum");
            if (!domains[v.index].subset_of(Domain::boolean()))
              throw std::invalid_argument("BoolSum: summed variables must be 0/1");
          }
          check_var(d.result, domains, "BoolSum");
          return std::make_shared<BoolSumProp>(d);
        } else if constexpr (std::is_same_v<T, ReifiedIntEq>) {
          check_var(d.b, domains, "ReifiedIntEq");
          check_var(d.x, domains, "ReifiedIntEq");
          if (!domains[d.b.index].subset_of(Domain::boolean()))
            throw std::invalid_argument("ReifiedIntEq: control variable must be 0/1");
          return std::make_shared<ReifiedIntEqProp>(d);
        } else if constexpr (std::is_same_v<T, AndChain>) {
          for (VarRef v : {d.prev, d.z, d.f}) {
            check_var(v, domains, "AndChain");
            if (!domains[v.index].subset_of(Domain::boolean()))
              throw std::invalid_argument("AndChain: variables must be 0/1");
          }
          return std::make_shared<AndChainProp>(d);
        } else {
          static_assert(std::is_same_v<T, CellChannel>);
          if (d.bools.empty()) throw std::invalid_argument("CellChannel: empty variable sequence");
          if (d.bools.size() > static_cast<std::size_t>(Domain::kMaxValue) ||
              d.empty_value < static_cast<int>(d.bools.size()) || d.empty_value > Domain::kMaxValue)
            throw std::invalid_argument("CellChannel: empty value must follow the patch values");
          check_var(d.cell, domains, "CellChannel");
          for (VarRef v : d.bools) {
            check_var(v, domains, "CellChannel");
            if (!domains[v.index].subset_of(Domain::boolean()))
              throw std::invalid_argument("CellChannel: per-patch variables must be 0/1");
          }
          return std::make_shared<CellChannelProp>(d);
        }
      },
      descriptor);
}

}  // namespace patchcp::kernel

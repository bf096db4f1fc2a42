#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "kernel/propagator.hpp"

namespace patchcp::kernel {

namespace {

// The automaton unrolled over the sequence length and trimmed to nodes that
// lie on some accepting path. Node ids are local to their layer.
struct Layout {
  struct Edge {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint32_t sym;
  };

  std::size_t length = 0;
  std::vector<std::size_t> node_base;   // length + 2 entries
  std::vector<std::size_t> edge_begin;  // length + 1 entries
  std::vector<Edge> edges;
  bool empty_language = false;

  std::size_t nodes(std::size_t layer) const { return node_base[layer + 1] - node_base[layer]; }
};

Layout unroll(const automata::Dfa& dfa, std::size_t n) {
  const auto states = static_cast<std::size_t>(dfa.state_count());
  const int k = dfa.alphabet();
  std::vector<std::vector<std::uint8_t>> reach(n + 1, std::vector<std::uint8_t>(states, 0));
  reach[0][static_cast<std::size_t>(dfa.start())] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < states; ++s)
      if (reach[i][s])
        for (int a = 0; a < k; ++a) reach[i + 1][static_cast<std::size_t>(dfa.next(static_cast<int>(s), a))] = 1;

  std::vector<std::vector<std::uint8_t>> alive(n + 1, std::vector<std::uint8_t>(states, 0));
  for (std::size_t s = 0; s < states; ++s) alive[n][s] = reach[n][s] && dfa.accepting(static_cast<int>(s));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t s = 0; s < states; ++s) {
      if (!reach[i][s]) continue;
      for (int a = 0; a < k; ++a)
        if (alive[i + 1][static_cast<std::size_t>(dfa.next(static_cast<int>(s), a))]) {
          alive[i][s] = 1;
          break;
        }
    }

  Layout out;
  out.length = n;
  if (!alive[0][static_cast<std::size_t>(dfa.start())]) {
    out.empty_language = true;
    out.node_base.assign(n + 2, 0);
    out.edge_begin.assign(n + 1, 0);
    return out;
  }

  std::vector<std::vector<std::uint32_t>> local(n + 1, std::vector<std::uint32_t>(states, 0));
  out.node_base.push_back(0);
  for (std::size_t i = 0; i <= n; ++i) {
    std::uint32_t count = 0;
    for (std::size_t s = 0; s < states; ++s)
      if (alive[i][s]) local[i][s] = count++;
    out.node_base.push_back(out.node_base.back() + count);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.edge_begin.push_back(out.edges.size());
    for (std::size_t s = 0; s < states; ++s) {
      if (!alive[i][s]) continue;
      for (int a = 0; a < k; ++a) {
        auto t = static_cast<std::size_t>(dfa.next(static_cast<int>(s), a));
        if (alive[i + 1][t]) out.edges.push_back({local[i][s], local[i + 1][t], static_cast<std::uint32_t>(a)});
      }
    }
  }
  out.edge_begin.push_back(out.edges.size());
  return out;
}

std::uint64_t count_paths(const Layout& g) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (g.empty_language) return 0;
  std::vector<std::uint64_t> ways(g.node_base.back(), 0);
  for (std::size_t v = g.node_base[g.length]; v < g.node_base[g.length + 1]; ++v) ways[v] = 1;
  for (std::size_t i = g.length; i-- > 0;) {
    for (std::size_t e = g.edge_begin[i]; e < g.edge_begin[i + 1]; ++e) {
      const auto& edge = g.edges[e];
      auto& w = ways[g.node_base[i] + edge.src];
      std::uint64_t add = ways[g.node_base[i + 1] + edge.dst];
      w = (kMax - w < add) ? kMax : w + add;
    }
  }
  return ways[0];
}

class RegularProp : public Propagator {
 public:
  RegularProp(Regular d, bool duplicates) : Propagator(d), d_(std::move(d)), duplicates_(duplicates) {}

  std::vector<VarRef> variables() const override { return d_.vars; }

  bool propagate(PropagationContext& ctx) const override {
    for (;;) {
      bool changed = false;
      if (!sweep(ctx, changed)) return false;
      if (!duplicates_ || !changed) return true;
    }
  }

 protected:
  // One domain-consistent filtering pass. Sets `changed` if any domain shrank.
  virtual bool sweep(PropagationContext& ctx, bool& changed) const = 0;

  Regular d_;
  bool duplicates_;
};

class LayeredRegular final : public RegularProp {
 public:
  LayeredRegular(Regular d, bool duplicates, Layout layout)
      : RegularProp(std::move(d), duplicates), g_(std::move(layout)) {}

 private:
  bool sweep(PropagationContext& ctx, bool& changed) const override {
    if (g_.empty_language) return false;
    const std::size_t n = g_.length;
    thread_local std::vector<std::uint8_t> fw, bw;
    thread_local std::vector<std::uint64_t> dom, supp;
    fw.assign(g_.node_base.back(), 0);
    bw.assign(g_.node_base.back(), 0);
    dom.resize(n);
    supp.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) dom[i] = ctx.dom(d_.vars[i]).bits();

    fw[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint8_t* from = fw.data() + g_.node_base[i];
      std::uint8_t* to = fw.data() + g_.node_base[i + 1];
      const std::uint64_t d = dom[i];
      for (std::size_t e = g_.edge_begin[i]; e < g_.edge_begin[i + 1]; ++e) {
        const auto& edge = g_.edges[e];
        if (from[edge.src] && ((d >> edge.sym) & 1U)) to[edge.dst] = 1;
      }
    }
    for (std::size_t v = g_.node_base[n]; v < g_.node_base[n + 1]; ++v) bw[v] = fw[v];
    for (std::size_t i = n; i-- > 0;) {
      const std::uint8_t* from = fw.data() + g_.node_base[i];
      std::uint8_t* back = bw.data() + g_.node_base[i];
      const std::uint8_t* next = bw.data() + g_.node_base[i + 1];
      const std::uint64_t d = dom[i];
      std::uint64_t s = 0;
      for (std::size_t e = g_.edge_begin[i]; e < g_.edge_begin[i + 1]; ++e) {
        const auto& edge = g_.edges[e];
        if (from[edge.src] && next[edge.dst] && ((d >> edge.sym) & 1U)) {
          back[edge.src] = 1;
          s |= Domain::bit(static_cast<int>(edge.sym));
        }
      }
      supp[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (supp[i] == dom[i]) continue;
      if (!ctx.restrict(d_.vars[i], supp[i])) return false;
      changed = true;
    }
    return true;
  }

  Layout g_;
};

class TableRegular final : public RegularProp {
 public:
  TableRegular(Regular d, bool duplicates, const Layout& g, std::uint64_t words, int alphabet)
      : RegularProp(std::move(d), duplicates),
        n_(g.length),
        alphabet_(static_cast<std::size_t>(alphabet)),
        blocks_((static_cast<std::size_t>(words) + 63) / 64),
        words_(static_cast<std::size_t>(words)) {
    present_.assign(n_, 0);
    support_.assign(n_ * alphabet_ * blocks_, 0);
    std::vector<std::uint32_t> path(n_);
    std::size_t next_word = 0;
    if (!g.empty_language) collect(g, 0, 0, path, next_word);
  }

 private:
  std::uint64_t* row(std::size_t i, std::size_t a) { return support_.data() + (i * alphabet_ + a) * blocks_; }
  const std::uint64_t* row(std::size_t i, std::size_t a) const {
    return support_.data() + (i * alphabet_ + a) * blocks_;
  }

  void collect(const Layout& g, std::size_t layer, std::uint32_t node, std::vector<std::uint32_t>& path,
               std::size_t& next_word) {
    if (layer == n_) {
      const std::size_t w = next_word++;
      for (std::size_t i = 0; i < n_; ++i) {
        row(i, path[i])[w / 64] |= std::uint64_t{1} << (w % 64);
        present_[i] |= Domain::bit(static_cast<int>(path[i]));
      }
      return;
    }
    for (std::size_t e = g.edge_begin[layer]; e < g.edge_begin[layer + 1]; ++e) {
      const auto& edge = g.edges[e];
      if (edge.src != node) continue;
      path[layer] = edge.sym;
      collect(g, layer + 1, edge.dst, path, next_word);
    }
  }

  bool sweep(PropagationContext& ctx, bool& changed) const override {
    if (words_ == 0) return false;
    thread_local std::vector<std::uint64_t> valid, acc;
    valid.assign(blocks_, ~std::uint64_t{0});
    if (words_ % 64) valid.back() = (std::uint64_t{1} << (words_ % 64)) - 1;
    acc.resize(blocks_);

    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t d = ctx.dom(d_.vars[i]).bits() & present_[i];
      if (d == present_[i]) continue;
      if (d == 0) return false;
      std::fill(acc.begin(), acc.end(), 0);
      for (std::uint64_t b = d; b != 0; b &= b - 1) {
        const std::uint64_t* r = row(i, static_cast<std::size_t>(std::countr_zero(b)));
        for (std::size_t k = 0; k < blocks_; ++k) acc[k] |= r[k];
      }
      std::uint64_t any = 0;
      for (std::size_t k = 0; k < blocks_; ++k) any |= (valid[k] &= acc[k]);
      if (any == 0) return false;
    }

    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t d = ctx.dom(d_.vars[i]).bits();
      std::uint64_t s = 0;
      for (std::uint64_t b = d & present_[i]; b != 0; b &= b - 1) {
        const int a = std::countr_zero(b);
        const std::uint64_t* r = row(i, static_cast<std::size_t>(a));
        for (std::size_t k = 0; k < blocks_; ++k)
          if (r[k] & valid[k]) {
            s |= Domain::bit(a);
            break;
          }
      }
      if (s == d) continue;
      if (!ctx.restrict(d_.vars[i], s)) return false;
      changed = true;
    }
    return true;
  }

  std::size_t n_;
  std::size_t alphabet_;
  std::size_t blocks_;
  std::size_t words_;
  std::vector<std::uint64_t> present_;
  std::vector<std::uint64_t> support_;
};

}  // namespace

std::shared_ptr<const Propagator> make_regular(const Regular& d, std::span<const Domain> domains) {
  if (!d.dfa) throw std::invalid_argument("Regular: missing automaton");
  if (d.vars.empty()) throw std::invalid_argument("Regular: empty variable sequence");
  const int k = d.dfa->alphabet();
  for (VarRef v : d.vars) {
    if (v.index >= domains.size())
      throw std::invalid_argument("Regular: variable " + std::to_string(v.index) + " does not exist");
    if (domains[v.index].max() >= k)
      throw std::invalid_argument("Regular: domain of variable " + std::to_string(v.index) +
                                  " exceeds automaton alphabet 0.." + std::to_string(k - 1));
  }
  std::vector<std::uint32_t> ids;
  for (VarRef v : d.vars) ids.push_back(v.index);
  std::sort(ids.begin(), ids.end());
  const bool duplicates = std::adjacent_find(ids.begin(), ids.end()) != ids.end();

  Layout g = unroll(*d.dfa, d.vars.size());
  const std::uint64_t words = count_paths(g);
  bool table = false;
  switch (d.algorithm) {
    case RegularAlgorithm::Auto:
      table = words <= kPathTableLimit;
      break;
    case RegularAlgorithm::PathTable:
      if (words > kPathTableLimit)
        throw std::invalid_argument("Regular: language too large for the path table algorithm");
      table = true;
      break;
    case RegularAlgorithm::LayeredGraph:
      break;
  }
  if (table) return std::make_shared<TableRegular>(d, duplicates, g, words, k);
  return std::make_shared<LayeredRegular>(d, duplicates, std::move(g));
}

}  // namespace patchcp::kernel

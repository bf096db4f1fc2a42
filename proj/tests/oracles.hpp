#pragma once

// Brute-force reference implementations used by the tests. None of them
// calls into the library code they are compared against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "patchcp/automata.hpp"
#include "patchcp/catalog.hpp"
#include "patchcp/kernel/domain.hpp"
#include "patchcp/rng.hpp"

namespace oracle {

using patchcp::automata::Regex;
using patchcp::kernel::Domain;

// End positions reachable by matching `re` against word[start..].
inline std::set<std::size_t> ends(const Regex& re, const std::vector<int>& word, std::size_t start) {
  switch (re.kind()) {
    case Regex::Kind::Sym:
      if (start < word.size() && word[start] == re.symbol()) return {start + 1};
      return {};
    case Regex::Kind::Seq: {
      std::set<std::size_t> cur{start};
      for (const auto& c : re.children()) {
        std::set<std::size_t> next;
        for (std::size_t s : cur)
          for (std::size_t e : ends(c, word, s)) next.insert(e);
        cur = std::move(next);
      }
      return cur;
    }
    case Regex::Kind::Alt: {
      std::set<std::size_t> out;
      for (const auto& c : re.children())
        for (std::size_t e : ends(c, word, start)) out.insert(e);
      return out;
    }
    case Regex::Kind::Star: {
      std::set<std::size_t> out{start};
      std::vector<std::size_t> todo{start};
      while (!todo.empty()) {
        std::size_t s = todo.back();
        todo.pop_back();
        for (std::size_t e : ends(re.children().front(), word, s))
          if (out.insert(e).second) todo.push_back(e);
      }
      return out;
    }
    case Regex::Kind::Rep: {
      std::set<std::size_t> cur{start};
      for (int i = 0; i < re.count(); ++i) {
        std::set<std::size_t> next;
        for (std::size_t s : cur)
          for (std::size_t e : ends(re.children().front(), word, s)) next.insert(e);
        cur = std::move(next);
      }
      return cur;
    }
  }
  return {};
}

inline bool matches(const Regex& re, const std::vector<int>& word) { return ends(re, word, 0).count(word.size()) > 0; }

// Calls f on every word of exactly `length` symbols over 0..alphabet-1.
inline void for_each_word(int alphabet, int length, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> w(static_cast<std::size_t>(length), 0);
  while (true) {
    f(w);
    int i = length - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

// Calls f on every tuple of the cartesian product of the domains.
inline void for_each_tuple(const std::vector<Domain>& doms, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<std::vector<int>> vals;
  for (const auto& d : doms) vals.push_back(d.values());
  std::vector<std::size_t> idx(doms.size(), 0);
  std::vector<int> t(doms.size());
  for (const auto& v : vals)
    if (v.empty()) return;
  while (true) {
    for (std::size_t i = 0; i < doms.size(); ++i) t[i] = vals[i][idx[i]];
    f(t);
    std::size_t i = doms.size();
    while (i > 0 && idx[i - 1] + 1 == vals[i - 1].size()) idx[--i] = 0;
    if (i == 0) return;
    ++idx[i - 1];
  }
}

// Per-position supported values of the solutions of `pred` within `doms`.
// Returns an empty vector when there is no solution.
inline std::vector<Domain> supports(const std::vector<Domain>& doms,
                                    const std::function<bool(const std::vector<int>&)>& pred) {
  std::vector<std::uint64_t> bits(doms.size(), 0);
  bool any = false;
  for_each_tuple(doms, [&](const std::vector<int>& t) {
    if (!pred(t)) return;
    any = true;
    for (std::size_t i = 0; i < t.size(); ++i) bits[i] |= Domain::bit(t[i]);
  });
  if (!any) return {};
  std::vector<Domain> out;
  for (auto b : bits) out.push_back(Domain::from_bits(b));
  return out;
}

inline bool run_dfa(const patchcp::automata::Dfa& d, const std::vector<int>& w) {
  int s = d.start();
  for (int a : w) s = d.next(s, a);
  return d.accepting(s);
}

// Moore table filling: true when every pair of reachable states is
// distinguishable and every state is reachable.
inline bool is_minimal(const patchcp::automata::Dfa& d) {
  const int n = d.state_count();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> todo{d.start()};
  seen[static_cast<std::size_t>(d.start())] = true;
  while (!todo.empty()) {
    int s = todo.back();
    todo.pop_back();
    for (int a = 0; a < d.alphabet(); ++a) {
      int t = d.next(s, a);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        todo.push_back(t);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), true) != n) return false;
  std::vector<std::vector<bool>> dist(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d.accepting(i) != d.accepting(j);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        for (int a = 0; a < d.alphabet(); ++a)
          if (dist[static_cast<std::size_t>(d.next(i, a))][static_cast<std::size_t>(d.next(j, a))]) {
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
            changed = true;
            break;
          }
      }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) return false;
  return true;
}

inline Regex random_regex(patchcp::Rng& rng, int alphabet, int depth) {
  const auto pick = depth <= 0 ? 0 : rng.below(6);
  switch (pick) {
    case 0:
    case 1:
      return Regex::sym(static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet))));
    case 2: {
      std::vector<Regex> c;
      for (int i = 0, n = 1 + static_cast<int>(rng.below(3)); i < n; ++i) c.push_back(random_regex(rng, alphabet, depth - 1));
      return Regex::seq(std::move(c));
    }
    case 3: {
      std::vector<Regex> c;
      for (int i = 0, n = 1 + static_cast<int>(rng.below(3)); i < n; ++i) c.push_back(random_regex(rng, alphabet, depth - 1));
      return Regex::alt(std::move(c));
    }
    case 4:
      return Regex::star(random_regex(rng, alphabet, depth - 1));
    default:
      return Regex::rep(random_regex(rng, alphabet, depth - 1), static_cast<int>(rng.below(4)));
  }
}

inline patchcp::automata::Dfa random_dfa(patchcp::Rng& rng, int states, int alphabet) {
  std::vector<int> tr;
  std::vector<std::uint8_t> acc;
  for (int s = 0; s < states; ++s) {
    for (int a = 0; a < alphabet; ++a) tr.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(states))));
    acc.push_back(rng.below(2) ? 1 : 0);
  }
  return patchcp::automata::Dfa(alphabet, 0, tr, acc);
}

inline Domain random_domain(patchcp::Rng& rng, int values) {
  std::uint64_t bits = 0;
  while (bits == 0) bits = rng.next() & ((std::uint64_t{1} << values) - 1);
  return Domain::from_bits(bits);
}

// Anchors where the shape fits on a w x h board, counted geometrically.
inline long geometric_placements(const patchcp::catalog::Shape& s, int w = 9, int h = 9) {
  if (s.width() > w || s.height() > h) return 0;
  return static_cast<long>(w - s.width() + 1) * (h - s.height() + 1);
}

// Distinct images of a shape under the 8 symmetries, by explicit matrices.
inline std::size_t distinct_images(const patchcp::catalog::Shape& s) {
  std::set<std::vector<std::pair<int, int>>> images;
  const int m[8][4] = {{1, 0, 0, 1},  {0, 1, -1, 0}, {-1, 0, 0, -1}, {0, -1, 1, 0},
                       {-1, 0, 0, 1}, {0, 1, 1, 0},  {1, 0, 0, -1},  {0, -1, -1, 0}};
  for (const auto& t : m) {
    std::vector<std::pair<int, int>> cells;
    for (const auto& c : s.cells()) cells.push_back({t[0] * c.row + t[1] * c.col, t[2] * c.row + t[3] * c.col});
    int r0 = cells.front().first, c0 = cells.front().second;
    for (auto& [r, c] : cells) {
      r0 = std::min(r0, r);
      c0 = std::min(c0, c);
    }
    for (auto& [r, c] : cells) {
      r -= r0;
      c -= c0;
    }
    std::sort(cells.begin(), cells.end());
    images.insert(cells);
  }
  return images.size();
}

}  // namespace oracle

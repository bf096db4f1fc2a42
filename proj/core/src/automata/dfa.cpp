#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "patchcp/automata.hpp"

namespace patchcp::automata {

Dfa::Dfa(int alphabet, int start, std::vector<int> transitions, std::vector<std::uint8_t> accepting)
    : alphabet_(alphabet), start_(start), transitions_(std::move(transitions)), accepting_(std::move(accepting)) {
  if (alphabet_ < 1 || alphabet_ > kMaxAlphabet) throw std::invalid_argument("dfa alphabet out of range");
  if (transitions_.size() != accepting_.size() * static_cast<std::size_t>(alphabet_))
    throw std::invalid_argument("dfa transition table has wrong size");
  if (start_ < 0 || start_ >= state_count()) throw std::invalid_argument("dfa start state out of range");
  for (int t : transitions_)
    if (t < 0 || t >= state_count()) throw std::invalid_argument("dfa transition target out of range");
}

namespace {

// Thompson NFA: every state has epsilon edges and at most one symbol edge.
struct Nfa {
  struct State {
    std::vector<int> eps;
    Symbol sym = -1;
    int to = -1;
  };
  std::vector<State> states;

  int add() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int in;
  int out;
};

Fragment build(Nfa& nfa, const Regex& re) {
  switch (re.kind()) {
    case Regex::Kind::Sym: {
      int a = nfa.add();
      int b = nfa.add();
      nfa.states[a].sym = re.symbol();
      nfa.states[a].to = b;
      return {a, b};
    }
    case Regex::Kind::Seq: {
      int a = nfa.add();
      int cur = a;
      for (const auto& c : re.children()) {
        Fragment f = build(nfa, c);
        nfa.states[cur].eps.push_back(f.in);
        cur = f.out;
      }
      return {a, cur};
    }
    case Regex::Kind::Alt: {
      int a = nfa.add();
      int b = nfa.add();
      for (const auto& c : re.children()) {
        Fragment f = build(nfa, c);
        nfa.states[a].eps.push_back(f.in);
        nfa.states[f.out].eps.push_back(b);
      }
      return {a, b};
    }
    case Regex::Kind::Star: {
      int a = nfa.add();
      int b = nfa.add();
      Fragment f = build(nfa, re.children().front());
      nfa.states[a].eps.push_back(f.in);
      nfa.states[a].eps.push_back(b);
      nfa.states[f.out].eps.push_back(f.in);
      nfa.states[f.out].eps.push_back(b);
      return {a, b};
    }
    case Regex::Kind::Rep: {
      int a = nfa.add();
      int cur = a;
      for (int i = 0; i < re.count(); ++i) {
        Fragment f = build(nfa, re.children().front());
        nfa.states[cur].eps.push_back(f.in);
        cur = f.out;
      }
      return {a, cur};
    }
  }
  throw std::logic_error("unknown regex kind");
}

void closure(const Nfa& nfa, std::vector<int>& set, std::vector<std::uint32_t>& mark, std::uint32_t stamp) {
  std::vector<int> stack(set.begin(), set.end());
  for (int s : set) mark[static_cast<std::size_t>(s)] = stamp;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : nfa.states[static_cast<std::size_t>(s)].eps) {
      if (mark[static_cast<std::size_t>(t)] != stamp) {
        mark[static_cast<std::size_t>(t)] = stamp;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

}  // namespace

Dfa compile(const Regex& regex, int alphabet) {
  if (alphabet < 1 || alphabet > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in 1..16");
  if (regex.max_symbol() >= alphabet || regex.min_symbol() < 0)
    throw std::invalid_argument("regex symbol outside alphabet 0.." + std::to_string(alphabet - 1));

  Nfa nfa;
  Fragment top = build(nfa, regex);
  std::vector<std::uint32_t> mark(nfa.states.size(), 0);
  std::uint32_t stamp = 0;

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  std::vector<int> trans;
  std::vector<std::uint8_t> acc;

  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<int>(sets.size()));
    if (fresh) {
      acc.push_back(std::binary_search(set.begin(), set.end(), top.out) ? 1 : 0);
      sets.push_back(std::move(set));
    }
    return it->second;
  };

  std::vector<int> init{top.in};
  closure(nfa, init, mark, ++stamp);
  intern(std::move(init));

  for (std::size_t d = 0; d < sets.size(); ++d) {
    for (Symbol a = 0; a < alphabet; ++a) {
      std::vector<int> moved;
      ++stamp;
      for (int s : sets[d]) {
        const auto& st = nfa.states[static_cast<std::size_t>(s)];
        if (st.sym == a && mark[static_cast<std::size_t>(st.to)] != stamp) {
          mark[static_cast<std::size_t>(st.to)] = stamp;
          moved.push_back(st.to);
        }
      }
      closure(nfa, moved, mark, ++stamp);
      trans.push_back(intern(std::move(moved)));
    }
  }
  return Dfa(alphabet, 0, std::move(trans), std::move(acc));
}

Dfa minimize(const Dfa& dfa) {
  const int k = dfa.alphabet();

  // Reachable states only.
  std::vector<int> order;
  std::vector<int> index(static_cast<std::size_t>(dfa.state_count()), -1);
  order.push_back(dfa.start());
  index[static_cast<std::size_t>(dfa.start())] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      int t = dfa.next(order[i], a);
      if (index[static_cast<std::size_t>(t)] < 0) {
        index[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const int n = static_cast<int>(order.size());
  auto next = [&](int s, Symbol a) { return index[static_cast<std::size_t>(dfa.next(order[static_cast<std::size_t>(s)], a))]; };

  // Inverse transitions.
  std::vector<std::vector<std::vector<int>>> inverse(static_cast<std::size_t>(k),
                                                     std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
  for (int s = 0; s < n; ++s)
    for (Symbol a = 0; a < k; ++a) inverse[static_cast<std::size_t>(a)][static_cast<std::size_t>(next(s, a))].push_back(s);

  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(static_cast<std::size_t>(n));
  {
    std::vector<int> acc, rej;
    for (int s = 0; s < n; ++s) (dfa.accepting(order[static_cast<std::size_t>(s)]) ? acc : rej).push_back(s);
    for (auto* b : {&acc, &rej}) {
      if (b->empty()) continue;
      for (int s : *b) block_of[static_cast<std::size_t>(s)] = static_cast<int>(blocks.size());
      blocks.push_back(std::move(*b));
    }
  }

  std::vector<std::vector<std::uint8_t>> in_work;
  std::deque<std::pair<int, Symbol>> work;
  auto push = [&](int b, Symbol a) {
    if (!in_work[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]) {
      in_work[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
      work.emplace_back(b, a);
    }
  };
  for (std::size_t b = 0; b < blocks.size(); ++b) in_work.emplace_back(static_cast<std::size_t>(k), 0);
  if (blocks.size() == 2) {
    int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (Symbol a = 0; a < k; ++a) push(smaller, a);
  }

  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> in_x(static_cast<std::size_t>(n), 0);
  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    in_work[static_cast<std::size_t>(splitter)][static_cast<std::size_t>(a)] = 0;

    std::vector<int> x;
    for (int t : blocks[static_cast<std::size_t>(splitter)])
      for (int s : inverse[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)]) {
        if (!in_x[static_cast<std::size_t>(s)]) {
          in_x[static_cast<std::size_t>(s)] = 1;
          x.push_back(s);
        }
      }
    std::vector<int> touched;
    for (int s : x) {
      int b = block_of[static_cast<std::size_t>(s)];
      if (hits[static_cast<std::size_t>(b)]++ == 0) touched.push_back(b);
    }
    for (int b : touched) {
      auto& blk = blocks[static_cast<std::size_t>(b)];
      int h = hits[static_cast<std::size_t>(b)];
      hits[static_cast<std::size_t>(b)] = 0;
      if (h == static_cast<int>(blk.size())) continue;
      std::vector<int> inside, outside;
      for (int s : blk) (in_x[static_cast<std::size_t>(s)] ? inside : outside).push_back(s);
      int fresh = static_cast<int>(blocks.size());
      blk = std::move(inside);
      for (int s : outside) block_of[static_cast<std::size_t>(s)] = fresh;
      blocks.push_back(std::move(outside));
      in_work.emplace_back(static_cast<std::size_t>(k), 0);
      const auto& kept = blocks[static_cast<std::size_t>(b)];
      const auto& split = blocks[static_cast<std::size_t>(fresh)];
      for (Symbol c = 0; c < k; ++c) {
        if (in_work[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])
          push(fresh, c);
        else
          push(kept.size() <= split.size() ? b : fresh, c);
      }
    }
    for (int s : x) in_x[static_cast<std::size_t>(s)] = 0;
  }

  // Renumber blocks breadth-first from the start block.
  std::vector<int> renum(blocks.size(), -1);
  std::vector<int> queue{block_of[0]};
  renum[static_cast<std::size_t>(block_of[0])] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int rep = blocks[static_cast<std::size_t>(queue[i])].front();
    for (Symbol a = 0; a < k; ++a) {
      int b = block_of[static_cast<std::size_t>(next(rep, a))];
      if (renum[static_cast<std::size_t>(b)] < 0) {
        renum[static_cast<std::size_t>(b)] = static_cast<int>(queue.size());
        queue.push_back(b);
      }
    }
  }
  std::vector<int> trans(queue.size() * static_cast<std::size_t>(k));
  std::vector<std::uint8_t> acc(queue.size());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int rep = blocks[static_cast<std::size_t>(queue[i])].front();
    acc[i] = dfa.accepting(order[static_cast<std::size_t>(rep)]) ? 1 : 0;
    for (Symbol a = 0; a < k; ++a)
      trans[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(a)] =
          renum[static_cast<std::size_t>(block_of[static_cast<std::size_t>(next(rep, a))])];
  }
  return Dfa(k, 0, std::move(trans), std::move(acc));
}

bool accepts(const Dfa& dfa, std::span<const Symbol> word) {
  int s = dfa.start();
  for (Symbol a : word) {
    if (a < 0 || a >= dfa.alphabet()) return false;
    s = dfa.next(s, a);
  }
  return dfa.accepting(s);
}

namespace {

// live[k][s]: some word of exactly k symbols leads from s to acceptance.
std::vector<std::vector<std::uint8_t>> live_table(const Dfa& dfa, int length) {
  const auto n = static_cast<std::size_t>(dfa.state_count());
  std::vector<std::vector<std::uint8_t>> live(static_cast<std::size_t>(length) + 1, std::vector<std::uint8_t>(n, 0));
  for (std::size_t s = 0; s < n; ++s) live[0][s] = dfa.accepting(static_cast<int>(s)) ? 1 : 0;
  for (int k = 1; k <= length; ++k)
    for (std::size_t s = 0; s < n; ++s)
      for (Symbol a = 0; a < dfa.alphabet(); ++a)
        if (live[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(dfa.next(static_cast<int>(s), a))]) {
          live[static_cast<std::size_t>(k)][s] = 1;
          break;
        }
  return live;
}

void enumerate_from(const Dfa& dfa, const std::vector<std::vector<std::uint8_t>>& live, int state, int remaining,
                    Word& prefix, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (Symbol a = 0; a < dfa.alphabet(); ++a) {
    int t = dfa.next(state, a);
    if (!live[static_cast<std::size_t>(remaining) - 1][static_cast<std::size_t>(t)]) continue;
    prefix.push_back(a);
    enumerate_from(dfa, live, t, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate(const Dfa& dfa, int length) {
  if (length < 0) throw std::invalid_argument("word length must be non-negative");
  auto live = live_table(dfa, length);
  std::vector<Word> out;
  if (!live[static_cast<std::size_t>(length)][static_cast<std::size_t>(dfa.start())]) return out;
  Word prefix;
  enumerate_from(dfa, live, dfa.start(), length, prefix, out);
  return out;
}

std::uint64_t count_words(const Dfa& dfa, int length) {
  if (length < 0) throw std::invalid_argument("word length must be non-negative");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const auto n = static_cast<std::size_t>(dfa.state_count());
  std::vector<std::uint64_t> ways(n, 0), next(n, 0);
  for (std::size_t s = 0; s < n; ++s) ways[s] = dfa.accepting(static_cast<int>(s)) ? 1 : 0;
  for (int k = 0; k < length; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      std::uint64_t sum = 0;
      for (Symbol a = 0; a < dfa.alphabet(); ++a) {
        std::uint64_t w = ways[static_cast<std::size_t>(dfa.next(static_cast<int>(s), a))];
        sum = (kMax - sum < w) ? kMax : sum + w;
      }
      next[s] = sum;
    }
    std::swap(ways, next);
  }
  return ways[static_cast<std::size_t>(dfa.start())];
}

}  // namespace patchcp::automata

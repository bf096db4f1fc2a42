#include <doctest.h>

#include <memory>

#include "oracles.hpp"
#include "patchcp/kernel/search.hpp"

using namespace patchcp::kernel;
using patchcp::Rng;
using patchcp::automata::Dfa;

namespace {

std::vector<VarRef> refs(std::size_t n, std::uint32_t first = 0) {
  std::vector<VarRef> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({first + static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<Domain> domains_of(const SolverState& s) { return {s.domains().begin(), s.domains().end()}; }

bool accepted(const Dfa& d, const std::vector<int>& t) { return oracle::run_dfa(d, t); }

// A random instance of one propagator kind: the initial domains, the
// descriptor, and the constraint as a predicate over full tuples.
struct Instance {
  std::vector<Domain> domains;
  PropagatorDescriptor descriptor;
  std::function<bool(const std::vector<int>&)> holds;
  bool domain_consistent = true;
};

Instance random_instance(Rng& rng, int kind) {
  Instance in;
  auto boolean = [&] { return oracle::random_domain(rng, 2); };
  switch (kind) {
    case 0: {
      const int n = 1 + static_cast<int>(rng.below(4));
      std::vector<int> coeffs;
      for (int i = 0; i < n; ++i) {
        coeffs.push_back(static_cast<int>(rng.below(7)) - 3);
        in.domains.push_back(oracle::random_domain(rng, 6));
      }
      const int constant = static_cast<int>(rng.below(13)) - 4;
      in.descriptor = LinearEq{coeffs, refs(static_cast<std::size_t>(n)), constant};
      in.holds = [coeffs, constant](const std::vector<int>& t) {
        int s = 0;
        for (std::size_t i = 0; i < t.size(); ++i) s += coeffs[i] * t[i];
        return s == constant;
      };
      in.domain_consistent = false;
      break;
    }
    case 1: {
      const int n = 1 + static_cast<int>(rng.below(5));
      for (int i = 0; i < n; ++i) in.domains.push_back(boolean());
      in.domains.push_back(oracle::random_domain(rng, 7));
      in.descriptor = BoolSum{refs(static_cast<std::size_t>(n)), {static_cast<std::uint32_t>(n)}};
      in.holds = [](const std::vector<int>& t) {
        int s = 0;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) s += t[i];
        return s == t.back();
      };
      break;
    }
    case 2: {
      in.domains = {boolean(), oracle::random_domain(rng, 5)};
      const int value = static_cast<int>(rng.below(5));
      in.descriptor = ReifiedIntEq{{0}, {1}, value};
      in.holds = [value](const std::vector<int>& t) { return (t[0] == 1) == (t[1] == value); };
      break;
    }
    case 3: {
      in.domains = {boolean(), boolean(), boolean()};
      in.descriptor = AndChain{{0}, {1}, {2}};
      in.holds = [](const std::vector<int>& t) { return (t[2] == 1) == (t[0] == 1 && t[1] == 1); };
      break;
    }
    default: {
      const int n = 1 + static_cast<int>(rng.below(4));
      const int empty = n;
      in.domains.push_back(oracle::random_domain(rng, n + 2));
      for (int i = 0; i < n; ++i) in.domains.push_back(boolean());
      in.descriptor = CellChannel{{0}, refs(static_cast<std::size_t>(n), 1), empty};
      in.holds = [n](const std::vector<int>& t) {
        for (int p = 0; p < n; ++p)
          if ((t[0] == p) != (t[static_cast<std::size_t>(p) + 1] == 1)) return false;
        return true;
      };
      break;
    }
  }
  return in;
}

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("domain basics") {
    const Domain d = Domain::of({1, 4, 63});
    CHECK(d.size() == 3);
    CHECK(d.min() == 1);
    CHECK(d.max() == 63);
    CHECK(d.contains(4));
    CHECK_FALSE(d.contains(2));
    CHECK_FALSE(d.contains(64));
    CHECK_FALSE(d.contains(-1));
    CHECK(d.values() == std::vector<int>{1, 4, 63});
    CHECK(Domain::range(2, 5) == Domain::of({2, 3, 4, 5}));
    CHECK(Domain::singleton(7).assigned());
    CHECK_FALSE(Domain::boolean().assigned());
    CHECK(Domain::of({2, 3}).subset_of(Domain::range(0, 5)));
    CHECK_THROWS_AS(Domain::range(0, 64), std::invalid_argument);
    CHECK_THROWS_AS(SolverState({Domain{}}), std::invalid_argument);
    CHECK(range_bits(3, 1) == 0);
    CHECK(range_bits(0, 63) == ~std::uint64_t{0});
  }

  TEST_CASE("malformed descriptors are rejected") {
    SolverState s({Domain::boolean(), Domain::range(0, 3)});
    CHECK_THROWS_AS(s.post(LinearEq{{1}, {}, 0}), std::invalid_argument);
    CHECK_THROWS_AS(s.post(BoolSum{{{1}}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(s.post(ReifiedIntEq{{5}, {0}, 0}), std::invalid_argument);
    auto dfa = std::make_shared<const Dfa>(patchcp::automata::compile(patchcp::automata::Regex::sym(0), 2));
    CHECK_THROWS_AS(s.post(Regular{dfa, {{1}}}), std::invalid_argument);
    CHECK_THROWS_AS(s.post(Regular{dfa, {}}), std::invalid_argument);
  }

  TEST_CASE("regular propagation is domain consistent") {
    Rng rng(21);
    for (const auto algorithm : {RegularAlgorithm::LayeredGraph, RegularAlgorithm::PathTable, RegularAlgorithm::Auto}) {
      for (int i = 0; i < 400; ++i) {
        const int alphabet = 1 + static_cast<int>(rng.below(3));
        auto dfa = std::make_shared<const Dfa>(oracle::random_dfa(rng, 1 + static_cast<int>(rng.below(6)), alphabet));
        // at most 3^7 words so the path table always applies
        const auto n = 1 + rng.below(algorithm == RegularAlgorithm::PathTable ? 7 : 8);
        std::vector<Domain> doms;
        for (std::uint64_t k = 0; k < n; ++k) doms.push_back(oracle::random_domain(rng, alphabet));
        SolverState s(doms);
        s.post(Regular{dfa, refs(n), algorithm});
        StatsLedger ledger;
        const Status st = s.propagate(ledger);
        const auto expected = oracle::supports(doms, [&](const std::vector<int>& t) { return accepted(*dfa, t); });
        if (expected.empty()) {
          REQUIRE(st == Status::Failed);
        } else {
          REQUIRE(st != Status::Failed);
          REQUIRE(domains_of(s) == expected);
        }
      }
    }
  }

  TEST_CASE("other propagators are sound, exact on ground tuples, and domain consistent where promised") {
    Rng rng(22);
    for (int kind = 0; kind < 5; ++kind) {
      CAPTURE(kind);
      for (int i = 0; i < 400; ++i) {
        Instance in = random_instance(rng, kind);
        SolverState s(in.domains);
        s.post(in.descriptor);
        StatsLedger ledger;
        const Status st = s.propagate(ledger);
        const auto expected = oracle::supports(in.domains, in.holds);
        bool ground = true;
        for (const auto& d : in.domains) ground &= d.assigned();
        if (ground) REQUIRE((st == Status::Failed) == expected.empty());
        if (expected.empty()) {
          if (in.domain_consistent) REQUIRE(st == Status::Failed);
          continue;
        }
        REQUIRE(st != Status::Failed);
        for (std::size_t v = 0; v < expected.size(); ++v) {
          REQUIRE(expected[v].subset_of(s.domains()[v]));
          if (in.domain_consistent) REQUIRE(expected[v] == s.domains()[v]);
        }
      }
    }
  }

  TEST_CASE("linear equality reaches bounds on its supports") {
    // x + y = 4 over x in 0..5, y in 0..2: x in 2..4
    SolverState s({Domain::range(0, 5), Domain::range(0, 2)});
    s.post(LinearEq{{1, 1}, refs(2), 4});
    StatsLedger ledger;
    REQUIRE(s.propagate(ledger) == Status::AtFixpoint);
    CHECK(s.domain({0}) == Domain::range(2, 4));
    CHECK(s.domain({1}) == Domain::range(0, 2));
    // F0 - Z0 = 0
    SolverState t({Domain::boolean(), Domain::singleton(1)});
    t.post(LinearEq{{1, -1}, refs(2), 0});
    REQUIRE(t.propagate(ledger) == Status::Solved);
    CHECK(t.value({0}) == 1);
  }

  TEST_CASE("propagation is idempotent and monotone") {
    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
      Instance in = random_instance(rng, static_cast<int>(rng.below(5)));
      SolverState s(in.domains);
      s.post(in.descriptor);
      StatsLedger ledger;
      if (s.propagate(ledger) == Status::Failed) continue;
      const auto fix = domains_of(s);
      SolverState again(fix);
      again.post(in.descriptor);
      REQUIRE(again.propagate(ledger) != Status::Failed);
      CHECK(domains_of(again) == fix);

      std::vector<Domain> narrower = in.domains;
      const auto v = rng.below(narrower.size());
      narrower[v] = Domain::from_bits(narrower[v].bits() & oracle::random_domain(rng, 7).bits());
      if (narrower[v].empty()) continue;
      SolverState n(narrower);
      n.post(in.descriptor);
      if (n.propagate(ledger) == Status::Failed) continue;
      for (std::size_t k = 0; k < fix.size(); ++k) CHECK(n.domains()[k].subset_of(fix[k]));
    }
  }

  TEST_CASE("snapshots are isolated") {
    SolverState s({Domain::range(0, 3), Domain::range(0, 3), Domain::boolean()});
    s.post(LinearEq{{1, 1}, refs(2), 3});
    StatsLedger ledger;
    s.propagate(ledger);
    const auto before = domains_of(s);
    SolverState copy = s.snapshot();
    copy.assign({0}, 1);
    copy.post(ReifiedIntEq{{2}, {1}, 2});
    REQUIRE(copy.propagate(ledger) == Status::Solved);
    CHECK(copy.value({1}) == 2);
    CHECK(copy.value({2}) == 1);
    CHECK(domains_of(s) == before);
    CHECK(s.propagator_count() == 1);
    CHECK(copy.propagator_count() == 2);
    CHECK(s.subscribers({2}).empty());
  }

  TEST_CASE("search counts every solution") {
    Rng rng(24);
    for (int i = 0; i < 60; ++i) {
      const int alphabet = 2 + static_cast<int>(rng.below(2));
      auto dfa = std::make_shared<const Dfa>(oracle::random_dfa(rng, 2 + static_cast<int>(rng.below(5)), alphabet));
      const std::size_t n = 4 + rng.below(5);
      std::vector<Domain> doms(n, Domain::range(0, alphabet - 1));
      doms.push_back(Domain::range(0, static_cast<int>(n)));
      std::vector<VarRef> ones;
      for (std::size_t k = 0; k < n; ++k) {
        ones.push_back({static_cast<std::uint32_t>(doms.size())});
        doms.push_back(Domain::boolean());
      }
      SolverState full(doms);
      full.post(Regular{dfa, refs(n)});
      for (std::size_t k = 0; k < n; ++k) full.post(ReifiedIntEq{ones[k], {static_cast<std::uint32_t>(k)}, 1});
      full.post(BoolSum{ones, {static_cast<std::uint32_t>(n)}});

      StatsLedger ledger;
      std::uint64_t expected = 0;
      oracle::for_each_word(alphabet, static_cast<int>(n), [&](const std::vector<int>& w) { expected += accepted(*dfa, w); });
      SearchStats stats;
      const auto leaves = search(full, {{refs(n), ValueOrder::Descending, {}}}, SearchMode::All, ledger, &stats);
      CHECK(leaves.size() == expected);
      CHECK(stats.solutions == expected);
      for (const auto& leaf : leaves) {
        CHECK(leaf.status() == Status::Solved);
        std::vector<int> word;
        for (std::size_t k = 0; k < n; ++k) word.push_back(leaf.value({static_cast<std::uint32_t>(k)}));
        CHECK(accepted(*dfa, word));
        CHECK(leaf.value({static_cast<std::uint32_t>(n)}) == std::count(word.begin(), word.end(), 1));
      }
      const auto first = search(full, {{refs(n), ValueOrder::Ascending, {}}}, SearchMode::First, ledger);
      CHECK(first.size() == std::min<std::uint64_t>(expected, 1));
      if (!first.empty() && !leaves.empty()) {
        // ascending first solution is the lexicographically smallest word
        std::vector<int> a;
        for (std::size_t k = 0; k < n; ++k) a.push_back(first[0].value({static_cast<std::uint32_t>(k)}));
        CHECK(a == patchcp::automata::enumerate(*dfa, static_cast<int>(n)).front());
      }
    }
  }

  TEST_CASE("descending search visits larger values first") {
    SolverState s({Domain::range(0, 2), Domain::range(0, 2)});
    StatsLedger ledger;
    const auto leaves = search(s, {{refs(2), ValueOrder::Descending, {}}}, SearchMode::All, ledger);
    REQUIRE(leaves.size() == 9);
    CHECK(leaves.front().value({0}) == 2);
    CHECK(leaves.front().value({1}) == 2);
    CHECK(leaves.back().value({0}) == 0);
  }

  TEST_CASE("scored stages branch on the highest score first") {
    SolverState s({Domain::range(0, 1), Domain::range(0, 1), Domain::range(0, 1)});
    StatsLedger ledger;
    VarScore prefer_last = [](const SolverState&, const StatsLedger&, std::size_t pos) { return static_cast<double>(pos); };
    const auto leaves = search(s, {{refs(3), ValueOrder::Descending, prefer_last}}, SearchMode::First, ledger);
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].value({2}) == 1);
  }

  TEST_CASE("merit on a fresh ledger") {
    SolverState s({Domain::boolean(), Domain::boolean(), Domain::range(0, 2)});
    s.post(BoolSum{refs(2), {2}});
    s.post(ReifiedIntEq{{0}, {2}, 1});
    StatsLedger ledger;
    CHECK(merit(s, ledger, {0}, MeritKind::AFC) == doctest::Approx(2.0));
    CHECK(merit(s, ledger, {1}, MeritKind::AFC) == doctest::Approx(1.0));
    CHECK(merit(s, ledger, {0}, MeritKind::Size) == 2);
    CHECK(merit(s, ledger, {0}, MeritKind::SumAFC) == merit(s, ledger, {0}, MeritKind::AFC));
    const std::vector<VarRef> comp{{1}};
    CHECK(merit(s, ledger, {0}, MeritKind::SumAFC, comp) == doctest::Approx(3.0));
    CHECK(merit(s, ledger, {0}, MeritKind::Action) == 0.0);
    CHECK(merit(s, ledger, {0}, MeritKind::CHB) == doctest::Approx(StatsLedger::kChbInit));
  }

  TEST_CASE("ledger update formulas") {
    StatsLedger ledger;
    SolverState s({Domain::range(0, 3), Domain::range(0, 3)});
    s.post(LinearEq{{1, 1}, refs(2), 6});
    REQUIRE(s.propagate(ledger) == Status::Solved);
    CHECK(ledger.action({0}) >= 1.0);
    const double r = 0.9 / 1.0;
    CHECK(ledger.chb({0}) == doctest::Approx(0.6 * 0.05 + 0.4 * r));
    CHECK(ledger.alpha() == doctest::Approx(0.4 - 2e-6));

    SolverState f({Domain::range(0, 1), Domain::range(0, 1)});
    const auto pid = f.post(LinearEq{{1, 1}, refs(2), 3});
    REQUIRE(f.propagate(ledger) == Status::Failed);
    CHECK(ledger.afc(pid) == doctest::Approx(2.0));
    CHECK(ledger.conflicts() == 1);
  }

  TEST_CASE("ledger counters are monotone and alpha has a floor") {
    StatsLedger ledger;
    Rng rng(25);
    std::vector<double> action(6, 0.0);
    double alpha = ledger.alpha();
    std::uint64_t conflicts = 0;
    for (int i = 0; i < 400; ++i) {
      Instance in = random_instance(rng, 0);
      in.domains.resize(6, Domain::boolean());
      SolverState s(in.domains);
      s.post(in.descriptor);
      s.propagate(ledger);
      for (std::uint32_t v = 0; v < 6; ++v) {
        CHECK(ledger.action({v}) >= action[v]);
        action[v] = ledger.action({v});
        CHECK(ledger.chb({v}) >= 0.0);
      }
      CHECK(ledger.alpha() <= alpha);
      CHECK(ledger.alpha() >= StatsLedger::kAlphaFloor);
      CHECK(ledger.conflicts() >= conflicts);
      alpha = ledger.alpha();
      conflicts = ledger.conflicts();
    }
  }
}

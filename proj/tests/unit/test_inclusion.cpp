#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace presafe;
using namespace presafe::automata;
using namespace presafe::inclusion;

namespace {

std::vector<SymbolId> alphabet_of(int n) {
  std::vector<SymbolId> a;
  for (int i = 0; i < n; ++i) a.push_back(i);
  return a;
}

const SymbolOrder kOrder = std::less<SymbolId>();

bool in_buffered_closure(const Word& w, const ExplicitNfa& b, const oracle::Pairs& ind, std::size_t k) {
  auto base = oracle::words_upto(b, alphabet_of(3), w.size());
  return oracle::closure_buffered(base, ind, k).count(w) > 0;
}

}  // namespace

TEST_CASE("without independence the verdict matches subset construction") {
  std::mt19937 rng(17);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_nfa(rng, 5, 3);
    auto b = oracle::random_nfa(rng, 5, 3);
    ClosureAutomaton bk(b, IndependenceRelation(), 2, alphabet_of(3));
    auto r = inclusion_iterative(a, bk, kOrder, 2, 4);
    auto expected = oracle::inclusion_counterexample(a, b, alphabet_of(3));
    CHECK((r.verdict == Verdict::Holds) == !expected.has_value());
    if (r.verdict == Verdict::Counterexample) {
      ++violations;
      CHECK(accepts(a, r.word));
      CHECK(!accepts(b, r.word));
      // breadth-first exploration finds a shortest counterexample
      CHECK(r.word.size() == expected->size());
    }
  }
  CHECK(violations > 20);
}

TEST_CASE("an automaton includes itself for every bound") {
  std::mt19937 rng(23);
  for (int i = 0; i < 50; ++i) {
    auto a = oracle::random_nfa(rng, 5, 3);
    auto ind = oracle::random_independence(rng, 3);
    for (std::size_t k : {1, 2, 3}) {
      ClosureAutomaton bk(a, oracle::relation_of(ind), k, alphabet_of(3));
      CHECK(bounded_inclusion(a, bk, k, kOrder).verdict == Verdict::Holds);
    }
  }
}

TEST_CASE("swapped word of the two-word example is included at bound one") {
  auto b = fixtures::example_b();
  auto rel = IndependenceRelation::from_pairs({{0, 1}, {1, 0}});
  ClosureAutomaton bk(b, rel, 1, {0, 1});
  auto a = trace_automaton({1, 0});
  auto r = inclusion_iterative(a, bk, kOrder, 1, 1);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.k == 1);
  ClosureAutomaton b0(b, rel, 0, {0, 1});
  CHECK(bounded_inclusion(a, b0, 0, kOrder).verdict == Verdict::Counterexample);
}

TEST_CASE("a word needing two pending symbols holds only from bound two") {
  // base word a1 a2 b1 b2, candidate b1 b2 a1 a2, every a independent of every b
  auto b = trace_automaton({0, 1, 2, 3});
  auto rel = IndependenceRelation([](SymbolId x, SymbolId y) { return (x < 2) != (y < 2); });
  ClosureAutomaton bk(b, rel, 1, alphabet_of(4));
  auto a = trace_automaton({2, 3, 0, 1});
  CHECK(bounded_inclusion(a, bk, 1, kOrder).verdict == Verdict::Counterexample);
  auto r = inclusion_iterative(a, bk, kOrder, 1, 4);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.k == 2);
  CHECK(r.rounds == 2);
}

TEST_CASE("incremental restarts agree with fresh runs") {
  std::mt19937 rng(31);
  for (int i = 0; i < 150; ++i) {
    auto a = oracle::random_nfa(rng, 4, 3);
    auto b = oracle::random_nfa(rng, 4, 3);
    auto ind = oracle::random_independence(rng, 3);
    ClosureAutomaton bk(b, oracle::relation_of(ind), 1, alphabet_of(3));
    auto inc = inclusion_iterative(a, bk, kOrder, 1, 3);
    if (inc.verdict == Verdict::BoundExhausted) continue;
    ClosureAutomaton fresh_b(b, oracle::relation_of(ind), inc.k, alphabet_of(3));
    auto fresh = bounded_inclusion(a, fresh_b, inc.k, kOrder);
    CHECK(fresh.verdict == inc.verdict);
  }
}

TEST_CASE("verdicts are sound and counterexamples valid against the closure oracle") {
  std::mt19937 rng(41);
  for (int i = 0; i < 150; ++i) {
    auto a = oracle::random_nfa(rng, 4, 3);
    auto b = oracle::random_nfa(rng, 4, 3);
    auto ind = oracle::random_independence(rng, 3);
    for (std::size_t k : {1, 2}) {
      ClosureAutomaton bk(b, oracle::relation_of(ind), k, alphabet_of(3));
      auto r = bounded_inclusion(a, bk, k, kOrder);
      if (r.verdict == Verdict::Holds) {
        auto la = oracle::words_upto(a, alphabet_of(3), 5);
        auto closure = oracle::closure_buffered(oracle::words_upto(b, alphabet_of(3), 5), ind, k);
        for (const auto& w : la) CHECK(closure.count(w) == 1);
      } else {
        REQUIRE(r.verdict == Verdict::Counterexample);
        CHECK(accepts(a, r.word));
        CHECK(!in_buffered_closure(r.word, b, ind, k));
      }
    }
  }
}

TEST_CASE("antichain stays pairwise incomparable") {
  std::mt19937 rng(47);
  for (int i = 0; i < 100; ++i) {
    auto a = oracle::random_nfa(rng, 5, 3);
    auto b = oracle::random_nfa(rng, 5, 3);
    auto ind = oracle::random_independence(rng, 3);
    ClosureAutomaton bk(b, oracle::relation_of(ind), 1, alphabet_of(3));
    InclusionChecker c(a, bk, kOrder);
    c.run(1);
    CHECK(c.antichain_valid());
    c.advance_bound(2);
    CHECK(c.antichain_valid());
    c.run(2);
    CHECK(c.antichain_valid());
  }
}

TEST_CASE("genuine violations keep their counterexample as the bound grows") {
  std::mt19937 rng(53);
  int seen = 0;
  for (int i = 0; i < 150; ++i) {
    auto a = oracle::random_nfa(rng, 4, 3);
    auto b = oracle::random_nfa(rng, 4, 3);
    auto ind = oracle::random_independence(rng, 3);
    ClosureAutomaton b1(b, oracle::relation_of(ind), 1, alphabet_of(3));
    auto r1 = inclusion_iterative(a, b1, kOrder, 1, 4);
    if (r1.verdict != Verdict::Counterexample) continue;
    ++seen;
    ClosureAutomaton b2(b, oracle::relation_of(ind), r1.k + 1, alphabet_of(3));
    auto r2 = inclusion_iterative(a, b2, kOrder, r1.k + 1, r1.k + 3);
    CHECK(r2.verdict == Verdict::Counterexample);
    CHECK(r2.word == r1.word);
  }
  CHECK(seen > 10);
}

TEST_CASE("spuriousness examples") {
  auto b = fixtures::example_b();
  auto rel = IndependenceRelation::from_pairs({{0, 1}, {1, 0}});
  CHECK(is_spurious({1, 0}, b, rel));
  CHECK(!is_spurious({0, 0}, b, rel));
  CHECK(is_spurious({0, 1}, b, rel));
}

TEST_CASE("driver race is a genuine violation") {
  auto p = fixtures::load("running_example");
  auto sym = std::make_shared<SymbolTable>();
  auto np = build_abstract_automaton(p, Scheduling::NonPreemptive, 1, sym);
  auto pa = build_abstract_automaton(p, Scheduling::Preemptive, 1, sym);
  auto tracked = [](const AbstractObservable& o) { return o.variable == "open" || o.variable == dev_variable("dev"); };
  auto w = oracle::word_with_projection(*pa, *sym, tracked, fixtures::driver_race());
  REQUIRE(w);
  CHECK(!is_spurious(*w, *np, sym->independence()));
  ClosureAutomaton b(*np, sym->independence(), 2);
  auto a = trace_automaton(*w);
  auto r = inclusion_iterative(a, b, [&](SymbolId x, SymbolId y) { return sym->less(x, y); }, 2, 8);
  CHECK(r.verdict == Verdict::Counterexample);
  CHECK(r.word == *w);
}

TEST_CASE("verification of the driver example is deterministic") {
  auto p = fixtures::load("running_example");
  auto first = synthesis::verify(p, p, {});
  auto second = synthesis::verify(p, p, {});
  CHECK(first.result.verdict == Verdict::Counterexample);
  CHECK(first.counterexample == second.counterexample);
  CHECK(first.result.k == second.result.k);
  CHECK(first.result.tuples == second.result.tuples);
}

TEST_CASE("budgets surface as distinct verdicts") {
  auto p = fixtures::load("running_example");
  synthesis::Config cfg;
  cfg.budget.max_tuples = 100;
  auto r = synthesis::verify(p, p, cfg);
  CHECK(r.result.verdict == Verdict::BudgetExceeded);
  CHECK(!r.result.reason.empty());

  auto b = trace_automaton({0, 1, 2, 3});
  auto rel = IndependenceRelation([](SymbolId x, SymbolId y) { return (x < 2) != (y < 2); });
  ClosureAutomaton bk(b, rel, 1, alphabet_of(4));
  auto a = trace_automaton({2, 3, 0, 1});
  auto x = inclusion_iterative(a, bk, kOrder, 1, 1);
  CHECK(x.verdict == Verdict::BoundExhausted);
  CHECK(x.k == 1);
}

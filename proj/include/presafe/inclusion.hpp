#pragma once

#include "presafe/automata.hpp"

#include <chrono>
#include <deque>
#include <memory>
#include <unordered_map>

namespace presafe::inclusion {

using automata::ClosureAutomaton;
using automata::IndependenceRelation;
using automata::Nfa;
using automata::StateId;
using automata::SymbolId;
using automata::SymbolOrder;
using automata::Word;

enum class Verdict { Holds, Counterexample, BudgetExceeded, BoundExhausted };
const char* verdict_name(Verdict v);

struct Budget {
  std::size_t max_tuples = 1000000;
  double timeout_s = 0;  // 0 = no limit
};

struct InclusionResult {
  Verdict verdict = Verdict::Holds;
  std::size_t k = 0;
  Word word;  // counterexample
  std::size_t tuples = 0;
  std::size_t rounds = 1;
  std::string reason;
};

// Antichain exploration of A against B_{k,I} with state kept across bound
// increments (frontier, antichain, overflow and dirty marks).
class InclusionChecker {
 public:
  InclusionChecker(const Nfa& a, const ClosureAutomaton& b, SymbolOrder order, Budget budget = {});

  InclusionResult run(std::size_t k);
  // drops dirty tuples and re-seeds frontier and antichain from the overflow set
  void advance_bound(std::size_t new_k);

  bool antichain_valid() const;
  std::size_t antichain_size() const;
  std::size_t frontier_size() const { return frontier_.size(); }
  std::size_t explored() const { return explored_; }

 private:
  using Set = std::shared_ptr<const std::vector<StateId>>;
  struct Tuple {
    StateId a;
    Set set;
    std::uint32_t witness;
    bool dirty;
  };
  struct Entry {
    Set set;
    bool dirty;
  };

  const Nfa& a_;
  const ClosureAutomaton& b_;
  SymbolOrder order_;
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  bool started_ = false;
  std::size_t k_ = 0;
  std::size_t explored_ = 0;

  std::deque<Tuple> frontier_;
  std::unordered_map<StateId, std::vector<Entry>> antichain_;
  std::vector<Tuple> overflow_;
  std::vector<std::pair<std::uint32_t, SymbolId>> witness_;  // parent, symbol
  std::unordered_map<StateId, std::vector<StateId>> a_closure_;

  const std::vector<StateId>& closure_a(StateId s);
  bool accepting_a(StateId s);
  Word word_of(std::uint32_t w) const;
  bool dominated(StateId a, const std::vector<StateId>& set, bool* by_dirty) const;
  void insert(const Tuple& t);
};

InclusionResult bounded_inclusion(const Nfa& a, const ClosureAutomaton& b, std::size_t k, SymbolOrder order,
                                  Budget budget = {});

InclusionResult inclusion_iterative(const Nfa& a, const ClosureAutomaton& b, SymbolOrder order,
                                    std::size_t k_start = 2, std::size_t k_max = 8, Budget budget = {});

// true iff cex belongs to Clo_I(L(b))
bool is_spurious(const Word& cex, const ClosureAutomaton& b);
bool is_spurious(const Word& cex, const Nfa& b, const IndependenceRelation& i);

}  // namespace presafe::inclusion

#pragma once

#include "presafe/semantics.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace presafe::automata {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
inline constexpr SymbolId kEpsilon = std::numeric_limits<SymbolId>::max();
using Word = std::vector<SymbolId>;

struct Edge {
  SymbolId symbol;
  StateId target;
  bool operator==(const Edge&) const = default;
};

class Nfa {
 public:
  virtual ~Nfa() = default;
  virtual std::vector<StateId> initial_states() const = 0;
  virtual bool is_final(StateId s) const = 0;
  // edges from s; the span stays valid for the automaton's lifetime
  virtual std::span<const Edge> edges(StateId s) const = 0;
  virtual std::string state_name(StateId s) const { return std::to_string(s); }
};

class ExplicitNfa final : public Nfa {
 public:
  StateId add_state(bool initial = false, bool final = false);
  void add_edge(StateId from, SymbolId sym, StateId to);
  void set_initial(StateId s, bool v = true);
  void set_final(StateId s, bool v = true);
  std::size_t size() const { return out_.size(); }

  std::vector<StateId> initial_states() const override;
  bool is_final(StateId s) const override { return final_[s]; }
  std::span<const Edge> edges(StateId s) const override { return out_[s]; }

 private:
  std::vector<std::vector<Edge>> out_;
  std::vector<char> initial_, final_;
};

// linear automaton accepting exactly one word
ExplicitNfa trace_automaton(const Word& w);
// automaton accepting a finite set of words (a trie)
ExplicitNfa word_set_automaton(const std::vector<Word>& words);

std::vector<StateId> epsilon_closure(const Nfa& a, std::vector<StateId> states);
bool accepts(const Nfa& a, const Word& w);
// every accepted word of length <= max_len, sorted
std::vector<Word> accepted_words(const Nfa& a, const std::vector<SymbolId>& alphabet, std::size_t max_len);

class IndependenceRelation {
 public:
  using Predicate = std::function<bool(SymbolId, SymbolId)>;
  IndependenceRelation() : pred_([](SymbolId, SymbolId) { return false; }) {}
  explicit IndependenceRelation(Predicate p) : pred_(std::move(p)) {}
  static IndependenceRelation from_pairs(const std::vector<std::pair<SymbolId, SymbolId>>& pairs);
  bool operator()(SymbolId a, SymbolId b) const { return pred_(a, b); }

 private:
  Predicate pred_;
};

bool independent(const AbstractObservable& a, const AbstractObservable& b);

// Interns abstract observables; shared between the automata of one query.
class SymbolTable {
 public:
  SymbolId intern(const AbstractObservable& o);
  const AbstractObservable& get(SymbolId id) const;
  std::optional<SymbolId> find(const AbstractObservable& o) const;
  std::size_t size() const;
  bool less(SymbolId a, SymbolId b) const;  // tid, access, variable, location
  std::string name(SymbolId id) const;
  IndependenceRelation independence() const;

 private:
  mutable std::shared_mutex mu_;
  std::deque<AbstractObservable> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

using SymbolOrder = std::function<bool(SymbolId, SymbolId)>;

// Lazily expanded automaton of the abstract NP or P semantics.
class ProgramAutomaton final : public Nfa {
 public:
  ProgramAutomaton(std::shared_ptr<const semantics::CompiledProgram> program, Scheduling mode,
                   std::shared_ptr<SymbolTable> symbols);

  std::vector<StateId> initial_states() const override { return {0}; }
  bool is_final(StateId s) const override;
  std::span<const Edge> edges(StateId s) const override;
  std::string state_name(StateId s) const override;

  std::size_t expanded_states() const;
  std::size_t known_states() const;
  const semantics::AbstractState& state(StateId s) const;
  const semantics::CompiledProgram& program() const { return *program_; }
  Scheduling mode() const { return mode_; }
  SymbolTable& symbols() const { return *symbols_; }
  bool unlock_violation(StateId s) const;

 private:
  std::shared_ptr<const semantics::CompiledProgram> program_;
  Scheduling mode_;
  std::shared_ptr<SymbolTable> symbols_;

  struct Entry {
    semantics::AbstractState state;
    std::vector<Edge> edges;
    bool expanded = false;
    bool violation = false;
  };
  mutable std::shared_mutex mu_;
  mutable std::deque<Entry> entries_;
  mutable std::unordered_map<semantics::AbstractState, StateId, semantics::StateHash> index_;

  StateId intern_locked(semantics::AbstractState s) const;
};

std::shared_ptr<ProgramAutomaton> build_abstract_automaton(const wlang::Program& p, Scheduling mode, int unroll,
                                                           std::shared_ptr<SymbolTable> symbols);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct ClosureState {
  StateId base;
  Word eta1, eta2;
  bool operator==(const ClosureState&) const = default;
};

// B_{k,I}. step() ignores k and returns every successor so that callers can
// see which ones exceed the bound; edges() applies the bound.
class ClosureAutomaton final : public Nfa {
 public:
  ClosureAutomaton(const Nfa& base, IndependenceRelation independence, std::size_t k,
                   std::vector<SymbolId> alphabet = {});

  std::vector<StateId> initial_states() const override;
  bool is_final(StateId s) const override;
  std::span<const Edge> edges(StateId s) const override;
  std::string state_name(StateId s) const override;

  // epsilon-closed successors of one closure state on alpha, unbounded
  const std::vector<StateId>& step(StateId s, SymbolId alpha) const;
  std::vector<StateId> epsilon_closed(std::vector<StateId> states) const;
  std::size_t eta_length(StateId s) const;  // max(|eta1|, |eta2|)
  const ClosureState& state(StateId s) const;
  std::size_t k() const { return k_; }
  std::size_t size() const;

 private:
  const Nfa& base_;
  IndependenceRelation ind_;
  std::size_t k_;
  std::vector<SymbolId> alphabet_;

  struct Hash {
    std::size_t operator()(const ClosureState& c) const;
  };
  mutable std::mutex mu_;
  mutable std::deque<ClosureState> states_;
  mutable std::unordered_map<ClosureState, StateId, Hash> index_;
  mutable std::unordered_map<std::uint64_t, std::vector<StateId>> step_memo_;
  mutable std::deque<std::vector<Edge>> edge_memo_;
  mutable std::unordered_map<StateId, std::size_t> edge_index_;

  StateId intern(ClosureState c) const;
  std::vector<ClosureState> raw_step(const ClosureState& c, SymbolId alpha) const;
};

// Writes every reachable state (up to max_states) in "state TAB symbol TAB state" form.
// Returns false when the budget cut the dump short.
bool dump_automaton(const Nfa& a, const std::function<std::string(SymbolId)>& symbol_name, std::ostream& out,
                    std::size_t max_states = 1000000);

}  // namespace presafe::automata

#pragma once

#include "presafe/inclusion.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace presafe::synthesis {

using automata::SymbolTable;
using automata::Word;

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// one symbol occurrence of a counterexample
struct EventId {
  int tid = 0;
  Access access = Access::Read;
  std::string variable;
  Location location;
  int occurrence = 0;  // earlier occurrences of the same observable in the word

  AbstractObservable observable() const { return {tid, access, variable, location}; }
  std::string str() const;
  auto operator<=>(const EventId&) const = default;
  bool operator==(const EventId&) const = default;
};

// A counterexample projected onto the events that conflict with some event of
// another thread. The remaining events are thread-local and independent of
// everything else, so they only matter for feasibility.
struct Counterexample {
  Word word;
  std::vector<EventId> all;      // one per symbol of word
  std::vector<char> relevant;    // per symbol of word
  std::vector<EventId> events;   // relevant events in word order
  std::vector<int> word_index;   // events[i] is word[word_index[i]]
};

Counterexample analyze_counterexample(const Word& word, const SymbolTable& symbols);
// every event of the word relevant (no projection)
Counterexample unprojected_counterexample(const Word& word, const SymbolTable& symbols);

// a permutation of event indices 0..n-1
using Trace = std::vector<std::uint16_t>;

Trace identity_trace(std::size_t n);
// interleavings preserving each thread's order, in lexicographic order of the
// thread sequence; throws BudgetError past cap
std::vector<Trace> neighborhood(const std::vector<EventId>& events, std::size_t cap = 100000);
std::vector<AbstractObservable> observations(const std::vector<EventId>& events, const Trace& t);
std::string render_trace(const std::vector<EventId>& events, const Trace& t);

struct Atom {
  int before = 0, after = 0;  // event indices
  auto operator<=>(const Atom&) const = default;
};

struct Constraint {
  enum class Kind { True, Atom, And, Or, Not };
  Kind kind = Kind::True;
  synthesis::Atom atom;
  std::vector<Constraint> args;

  static Constraint truth() { return {}; }
  static Constraint of(synthesis::Atom a);
  static Constraint conj(const std::vector<synthesis::Atom>& atoms);
  static Constraint conj(std::vector<Constraint> c);
  static Constraint disj(std::vector<Constraint> c);
  static Constraint negate(Constraint c);

  bool eval(const std::vector<int>& position) const;  // position[event] in the trace
  bool eval_trace(const Trace& t) const;
  std::vector<synthesis::Atom> atoms() const;  // of a conjunction, in order
  std::string str(const std::vector<EventId>& events) const;
};

std::vector<int> positions(const Trace& t);

// dependent cross-thread pairs in trace order, sorted canonically
Constraint phi_of_trace(const std::vector<EventId>& events, const Trace& t);

enum class TraceClass : std::uint8_t { Infeasible, Good, Bad };

struct Classification {
  std::vector<char> np_feasible;  // per trace, under the reference program
  std::vector<char> p_feasible;   // per trace, under the candidate program
  std::vector<TraceClass> cls;    // Good: equivalent to an np-feasible trace
  std::vector<std::size_t> np_indices() const;
  std::vector<std::size_t> bad_indices() const;
};

// true iff some accepted word of a projects to t and agrees with the
// counterexample's per-thread sequences
bool feasible(const automata::Nfa& a, const Counterexample& cex, const Trace& t);

Classification classify_traces(const std::vector<Trace>& nhood, const Counterexample& cex, const automata::Nfa& np,
                               const automata::Nfa& p);
Classification classify_traces_serial(const std::vector<Trace>& nhood, const Counterexample& cex,
                                      const automata::Nfa& np, const automata::Nfa& p);

// greedy single-atom elimination over phi(bad trace); a constraint is valid
// when no Good trace of the neighborhood satisfies it
Constraint generalize(const std::vector<EventId>& events, const Trace& bad_trace, const std::vector<Trace>& nhood,
                      const Classification& c);
Constraint generalize_serial(const std::vector<EventId>& events, const Trace& bad_trace,
                             const std::vector<Trace>& nhood, const Classification& c);
bool constraint_valid(const Constraint& rho, const std::vector<Trace>& nhood, const Classification& c);

struct LockRange {
  int tid = 0;
  std::string first, last;  // statement labels in program order
  auto operator<=>(const LockRange&) const = default;
};

struct Fix {
  enum class Kind { Lock, Lock2, Reorder };
  Kind kind = Kind::Lock;
  std::vector<LockRange> ranges;  // lock fixes
  int tid = 0;                    // reorder: thread of the signal
  std::string signal, after;      // reorder: move signal to just after this statement

  std::string str() const;
  auto operator<=>(const Fix&) const = default;
};

const char* fix_kind_name(Fix::Kind k);

// every instance of the lock, double-sided lock and signal reorder patterns
std::vector<Fix> infer_fixes(const Constraint& rho, const std::vector<EventId>& events, const wlang::Program& program);

// fixes to apply, kept sorted and unique
struct Plan {
  std::vector<Fix> fixes;
  bool add(const Fix& f);  // false when already present
  bool operator==(const Plan&) const = default;
};

struct Placement {
  wlang::Program program;
  std::vector<std::string> errors;  // placement failures, empty on success
  std::vector<std::string> locks;   // synthesized lock names
  bool ok() const { return errors.empty(); }
};

// applies every reorder, then places one lock per group of overlapping
// ranges; threads with identical bodies share their ranges
Placement render_plan(const wlang::Program& original, const Plan& plan);
Placement place_locks(const wlang::Program& program, const Fix& fix);
Placement apply_reorder(const wlang::Program& program, const Fix& fix);

struct DeadlockReport {
  std::vector<std::string> cycles;         // static lock-order cycles
  std::vector<std::string> stuck_states;   // reachable blocked states (first few)
  std::size_t stuck_count = 0;
  std::size_t unlock_violations = 0;
  bool truncated = false;                  // exploration hit the state budget
  std::vector<std::string> warnings() const;
};

DeadlockReport detect_deadlocks(const wlang::Program& p, int unroll = 1, std::size_t max_states = 100000);

struct Config {
  int unroll = 1;
  std::size_t k_start = 2;
  std::size_t k_max = 8;
  inclusion::Budget budget;
  int max_iterations = 20;
  std::size_t nhood_cap = 100000;
};

struct Timings {
  double parse_ms = 0, automata_ms = 0, inclusion_ms = 0, synthesis_ms = 0;
};

struct VerifyResult {
  inclusion::InclusionResult result;
  std::vector<std::string> counterexample;  // rendered symbols
  Timings timings;
};

// P(candidate) against the closure of NP(reference)
VerifyResult verify(const wlang::Program& reference, const wlang::Program& candidate, const Config& cfg);

struct Iteration {
  int index = 0;
  inclusion::Verdict verdict = inclusion::Verdict::Holds;
  std::size_t k = 0;
  std::size_t tuples = 0;
  std::size_t rounds = 0;
  std::vector<std::string> counterexample;
  std::vector<std::string> events;  // projected events
  std::size_t nhood = 0, np_feasible = 0, bad = 0;
  std::vector<std::string> rho_g;
  std::vector<std::string> fixes;
  Timings timings;
};

enum class Outcome { Safe, Synthesized, PatternFailure, PlacementFailure, NoProgress, IterationCap, Budget };
const char* outcome_name(Outcome o);

struct SynthesisReport {
  Outcome outcome = Outcome::Safe;
  std::vector<Iteration> iterations;
  std::vector<Fix> fixes;  // final plan
  std::vector<std::string> diagnostics;
  std::size_t k_max_reached = 0;
  Timings timings;
  bool success() const { return outcome == Outcome::Safe || outcome == Outcome::Synthesized; }
};

struct SynthesisResult {
  wlang::Program program;
  SynthesisReport report;
};

SynthesisResult synthesize(const wlang::Program& program, const Config& cfg = {});

}  // namespace presafe::synthesis

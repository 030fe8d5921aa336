#include "presafe/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace presafe::semantics {
namespace {

bool same_but_ctid(const AbstractState& a, const AbstractState& b) { return a.sync == b.sync && a.threads == b.threads; }
bool same_but_ctid(const ConcreteState& a, const ConcreteState& b) { return a.vals == b.vals && a.threads == b.threads; }

template <class State>
struct NodeKey {
  State state;
  std::size_t steps;
  bool operator==(const NodeKey&) const = default;
};

template <class State>
struct NodeKeyHash {
  std::size_t operator()(const NodeKey<State>& k) const { return StateHash{}(k.state) * 31 + k.steps; }
};

// Explores the (state, steps) graph, then reads the language off it by an
// on-the-fly subset construction; observables only label progress steps so
// the words are finite.
template <class State, class Obs, class StepFn>
EnumerationResult<Obs> enumerate_impl(const CompiledProgram& p, State init, StepFn step, const EnumerationConfig& cfg) {
  EnumerationResult<Obs> res;
  std::unordered_map<NodeKey<State>, std::uint32_t, NodeKeyHash<State>> index;
  std::vector<NodeKey<State>> nodes;
  std::vector<std::vector<std::pair<std::uint32_t, std::optional<Obs>>>> edges;
  std::vector<char> final;

  auto intern = [&](NodeKey<State> k) -> std::uint32_t {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    auto id = static_cast<std::uint32_t>(nodes.size());
    index.emplace(k, id);
    nodes.push_back(std::move(k));
    edges.emplace_back();
    final.push_back(0);
    return id;
  };
  intern({std::move(init), 0});
  for (std::uint32_t u = 0; u < nodes.size(); ++u) {
    if (nodes.size() > cfg.max_states) {
      res.budget_exceeded = true;
      res.budget_reason = "state budget of " + std::to_string(cfg.max_states) + " exceeded";
      res.states = nodes.size();
      return res;
    }
    State s = nodes[u].state;
    std::size_t steps = nodes[u].steps;
    final[u] = is_final(s);
    auto r = step(s);
    if (r.unlock_violation) ++res.unlock_violations;
    if (is_blocked(p, s)) ++res.deadlocks;
    for (auto& succ : r.succ) {
      bool progress = !same_but_ctid(s, succ.state);
      if (progress && steps >= cfg.max_steps) continue;
      std::uint32_t v = intern({std::move(succ.state), steps + (progress ? 1 : 0)});
      edges[u].push_back({v, std::move(succ.obs)});
    }
  }
  res.states = nodes.size();

  auto closure = [&](std::vector<std::uint32_t> set) {
    std::vector<char> seen(nodes.size(), 0);
    for (auto x : set) seen[x] = 1;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (const auto& [v, o] : edges[set[i]])
        if (!o && !seen[v]) {
          seen[v] = 1;
          set.push_back(v);
        }
    std::sort(set.begin(), set.end());
    return set;
  };

  std::vector<Obs> word;
  auto dfs = [&](auto&& self, const std::vector<std::uint32_t>& set) -> void {
    if (res.budget_exceeded) return;
    for (auto x : set)
      if (final[x]) {
        res.sequences.insert(word);
        break;
      }
    if (res.sequences.size() > cfg.max_sequences) {
      res.budget_exceeded = true;
      res.budget_reason = "sequence budget of " + std::to_string(cfg.max_sequences) + " exceeded";
      return;
    }
    std::map<Obs, std::vector<std::uint32_t>> next;
    for (auto x : set)
      for (const auto& [v, o] : edges[x])
        if (o) next[*o].push_back(v);
    for (auto& [o, targets] : next) {
      word.push_back(o);
      self(self, closure(std::move(targets)));
      word.pop_back();
    }
  };
  dfs(dfs, closure({0}));
  return res;
}

}  // namespace

EnumerationResult<AbstractObservable> enumerate_abstract(const wlang::Program& prog, const EnumerationConfig& cfg) {
  CompiledProgram p(prog, cfg.unroll);
  return enumerate_impl<AbstractState, AbstractObservable>(
      p, initial_abstract_state(p), [&](const AbstractState& s) { return step_abstract(p, s, cfg.scheduling); }, cfg);
}

EnumerationResult<ConcreteObservable> enumerate_concrete(const wlang::Program& prog, const EnumerationConfig& cfg) {
  CompiledProgram p(prog, cfg.unroll);
  return enumerate_impl<ConcreteState, ConcreteObservable>(
      p, initial_concrete_state(p),
      [&](const ConcreteState& s) { return step_concrete(p, s, cfg.domain, cfg.scheduling); }, cfg);
}

}  // namespace presafe::semantics

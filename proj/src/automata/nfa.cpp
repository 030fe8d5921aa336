#include "presafe/automata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace presafe::automata {

StateId ExplicitNfa::add_state(bool initial, bool final) {
  out_.emplace_back();
  initial_.push_back(initial);
  final_.push_back(final);
  return static_cast<StateId>(out_.size() - 1);
}

void ExplicitNfa::add_edge(StateId from, SymbolId sym, StateId to) {
  Edge e{sym, to};
  auto& v = out_[from];
  if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
}

void ExplicitNfa::set_initial(StateId s, bool v) { initial_[s] = v; }
void ExplicitNfa::set_final(StateId s, bool v) { final_[s] = v; }

std::vector<StateId> ExplicitNfa::initial_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < initial_.size(); ++s)
    if (initial_[s]) out.push_back(s);
  return out;
}

ExplicitNfa trace_automaton(const Word& w) {
  ExplicitNfa a;
  StateId cur = a.add_state(true, w.empty());
  for (std::size_t i = 0; i < w.size(); ++i) {
    StateId next = a.add_state(false, i + 1 == w.size());
    a.add_edge(cur, w[i], next);
    cur = next;
  }
  return a;
}

ExplicitNfa word_set_automaton(const std::vector<Word>& words) {
  ExplicitNfa a;
  a.add_state(true, false);
  std::map<std::pair<StateId, SymbolId>, StateId> child;
  for (const auto& w : words) {
    StateId cur = 0;
    for (SymbolId s : w) {
      auto it = child.find({cur, s});
      if (it == child.end()) {
        StateId n = a.add_state();
        a.add_edge(cur, s, n);
        it = child.emplace(std::make_pair(cur, s), n).first;
      }
      cur = it->second;
    }
    a.set_final(cur);
  }
  return a;
}

std::vector<StateId> epsilon_closure(const Nfa& a, std::vector<StateId> states) {
  std::unordered_set<StateId> seen(states.begin(), states.end());
  std::vector<StateId> work(seen.begin(), seen.end());
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (const Edge& e : a.edges(s))
      if (e.symbol == kEpsilon && seen.insert(e.target).second) work.push_back(e.target);
  }
  std::vector<StateId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
std::vector<StateId> step_set(const Nfa& a, const std::vector<StateId>& set, SymbolId sym) {
  std::vector<StateId> next;
  for (StateId s : set)
    for (const Edge& e : a.edges(s))
      if (e.symbol == sym) next.push_back(e.target);
  return epsilon_closure(a, std::move(next));
}

bool any_final(const Nfa& a, const std::vector<StateId>& set) {
  return std::any_of(set.begin(), set.end(), [&](StateId s) { return a.is_final(s); });
}
}  // namespace

bool accepts(const Nfa& a, const Word& w) {
  auto cur = epsilon_closure(a, a.initial_states());
  for (SymbolId s : w) {
    cur = step_set(a, cur, s);
    if (cur.empty()) return false;
  }
  return any_final(a, cur);
}

std::vector<Word> accepted_words(const Nfa& a, const std::vector<SymbolId>& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self, const std::vector<StateId>& set) -> void {
    if (any_final(a, set)) out.push_back(w);
    if (w.size() == max_len) return;
    for (SymbolId s : alphabet) {
      auto next = step_set(a, set, s);
      if (next.empty()) continue;
      w.push_back(s);
      self(self, next);
      w.pop_back();
    }
  };
  rec(rec, epsilon_closure(a, a.initial_states()));
  std::sort(out.begin(), out.end());
  return out;
}

IndependenceRelation IndependenceRelation::from_pairs(const std::vector<std::pair<SymbolId, SymbolId>>& pairs) {
  auto set = std::make_shared<std::set<std::pair<SymbolId, SymbolId>>>();
  for (auto [a, b] : pairs) {
    if (a == b) continue;
    set->insert({a, b});
    set->insert({b, a});
  }
  return IndependenceRelation([set](SymbolId a, SymbolId b) { return set->count({a, b}) > 0; });
}

bool dump_automaton(const Nfa& a, const std::function<std::string(SymbolId)>& symbol_name, std::ostream& out,
                    std::size_t max_states) {
  std::vector<StateId> order = a.initial_states();
  std::unordered_set<StateId> seen(order.begin(), order.end());
  for (StateId s : order) out << "# initial\t" << a.state_name(s) << "\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i >= max_states) return false;
    StateId s = order[i];
    if (a.is_final(s)) out << "# final\t" << a.state_name(s) << "\n";
    for (const Edge& e : a.edges(s)) {
      out << a.state_name(s) << "\t" << (e.symbol == kEpsilon ? std::string("eps") : symbol_name(e.symbol)) << "\t"
          << a.state_name(e.target) << "\n";
      if (seen.insert(e.target).second) order.push_back(e.target);
    }
  }
  return true;
}

}  // namespace presafe::automata

#include "presafe/automata.hpp"

#include <algorithm>
#include <boost/container_hash/hash.hpp>

namespace presafe::automata {

std::size_t ClosureAutomaton::Hash::operator()(const ClosureState& c) const {
  std::size_t h = c.base;
  boost::hash_combine(h, c.eta1.size());
  for (auto s : c.eta1) boost::hash_combine(h, s);
  boost::hash_combine(h, c.eta2.size());
  for (auto s : c.eta2) boost::hash_combine(h, s);
  return h;
}

ClosureAutomaton::ClosureAutomaton(const Nfa& base, IndependenceRelation independence, std::size_t k,
                                   std::vector<SymbolId> alphabet)
    : base_(base), ind_(std::move(independence)), k_(k), alphabet_(std::move(alphabet)) {}

StateId ClosureAutomaton::intern(ClosureState c) const {
  auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  auto id = static_cast<StateId>(states_.size());
  states_.push_back(c);
  index_.emplace(std::move(c), id);
  return id;
}

std::vector<StateId> ClosureAutomaton::initial_states() const {
  std::lock_guard lock(mu_);
  std::vector<StateId> out;
  for (StateId s : base_.initial_states()) out.push_back(intern({s, {}, {}}));
  return out;
}

bool ClosureAutomaton::is_final(StateId s) const {
  std::lock_guard lock(mu_);
  const ClosureState& c = states_[s];
  return c.eta1.empty() && c.eta2.empty() && base_.is_final(c.base);
}

const ClosureState& ClosureAutomaton::state(StateId s) const {
  std::lock_guard lock(mu_);
  return states_[s];
}

std::size_t ClosureAutomaton::eta_length(StateId s) const {
  std::lock_guard lock(mu_);
  const ClosureState& c = states_[s];
  return std::max(c.eta1.size(), c.eta2.size());
}

std::size_t ClosureAutomaton::size() const {
  std::lock_guard lock(mu_);
  return states_.size();
}

std::string ClosureAutomaton::state_name(StateId s) const {
  std::lock_guard lock(mu_);
  const ClosureState& c = states_[s];
  auto word = [](const Word& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
    return out + "]";
  };
  return "(" + base_.state_name(c.base) + "," + word(c.eta1) + "," + word(c.eta2) + ")";
}

namespace {

// index of the first occurrence of x in eta that is independent of every
// symbol before it; eta.size() when there is none
template <class Ind>
std::size_t matchable(const Word& eta, SymbolId x, const Ind& ind) {
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] == x) return i;
    if (!ind(x, eta[i])) return eta.size();
  }
  return eta.size();
}

template <class Ind>
bool free_of(const Word& eta, SymbolId x, const Ind& ind) {
  for (SymbolId y : eta)
    if (y == x || !ind(x, y)) return false;
  return true;
}

}  // namespace

// Rules 2 and 3: alpha is read by the closure automaton, beta is consumed from B.
std::vector<ClosureState> ClosureAutomaton::raw_step(const ClosureState& c, SymbolId alpha) const {
  std::vector<ClosureState> out;
  for (const Edge& e : base_.edges(c.base)) {
    if (e.symbol == kEpsilon) continue;
    const SymbolId beta = e.symbol;
    Word eta1 = c.eta1, eta2 = c.eta2;
    if (free_of(eta1, alpha, ind_)) {
      eta2.push_back(alpha);
    } else {
      std::size_t i = matchable(eta1, alpha, ind_);
      if (i == eta1.size()) continue;
      eta1.erase(eta1.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (free_of(eta2, beta, ind_)) {
      eta1.push_back(beta);
    } else {
      std::size_t i = matchable(eta2, beta, ind_);
      if (i == eta2.size()) continue;
      eta2.erase(eta2.begin() + static_cast<std::ptrdiff_t>(i));
    }
    out.push_back({e.target, std::move(eta1), std::move(eta2)});
  }
  return out;
}

std::vector<StateId> ClosureAutomaton::epsilon_closed(std::vector<StateId> states) const {
  std::lock_guard lock(mu_);
  std::vector<StateId> work = states;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  std::vector<StateId> seen = states;
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    ClosureState c = states_[s];
    for (const Edge& e : base_.edges(c.base)) {
      if (e.symbol != kEpsilon) continue;
      StateId t = intern({e.target, c.eta1, c.eta2});
      auto pos = std::lower_bound(seen.begin(), seen.end(), t);
      if (pos != seen.end() && *pos == t) continue;
      seen.insert(pos, t);
      work.push_back(t);
    }
  }
  return seen;
}

const std::vector<StateId>& ClosureAutomaton::step(StateId s, SymbolId alpha) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | alpha;
  {
    std::lock_guard lock(mu_);
    auto it = step_memo_.find(key);
    if (it != step_memo_.end()) return it->second;
  }
  std::vector<StateId> targets;
  {
    std::lock_guard lock(mu_);
    ClosureState c = states_[s];
    for (auto& n : raw_step(c, alpha)) targets.push_back(intern(std::move(n)));
  }
  targets = epsilon_closed(std::move(targets));
  std::lock_guard lock(mu_);
  return step_memo_.emplace(key, std::move(targets)).first->second;
}

std::span<const Edge> ClosureAutomaton::edges(StateId s) const {
  {
    std::lock_guard lock(mu_);
    auto it = edge_index_.find(s);
    if (it != edge_index_.end()) return edge_memo_[it->second];
  }
  std::vector<Edge> out;
  ClosureState c = state(s);
  for (const Edge& e : base_.edges(c.base)) {
    if (e.symbol != kEpsilon) continue;
    std::lock_guard lock(mu_);
    out.push_back({kEpsilon, intern({e.target, c.eta1, c.eta2})});
  }
  for (SymbolId a : alphabet_) {
    std::vector<StateId> raw;
    {
      std::lock_guard lock(mu_);
      for (auto& n : raw_step(c, a))
        if (n.eta1.size() <= k_ && n.eta2.size() <= k_) raw.push_back(intern(std::move(n)));
    }
    for (StateId t : raw) out.push_back({a, t});
  }
  std::lock_guard lock(mu_);
  auto it = edge_index_.find(s);
  if (it != edge_index_.end()) return edge_memo_[it->second];
  edge_index_.emplace(s, edge_memo_.size());
  edge_memo_.push_back(std::move(out));
  return edge_memo_.back();
}

}  // namespace presafe::automata

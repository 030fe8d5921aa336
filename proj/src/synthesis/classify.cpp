#include "presafe/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace presafe::synthesis {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

// Product of a with the per-thread cursors of the counterexample; relevant
// symbols must additionally follow t.
bool feasible(const automata::Nfa& a, const Counterexample& cex, const Trace& t) {
  std::map<int, int> slot;
  for (const auto& e : cex.all) slot.emplace(e.tid, 0);
  int n = 0;
  for (auto& [tid, s] : slot) s = n++;
  std::vector<std::vector<int>> seq(n);
  for (std::size_t i = 0; i < cex.all.size(); ++i) seq[slot[cex.all[i].tid]].push_back(static_cast<int>(i));
  std::vector<int> event_of(cex.word.size(), -1);
  for (std::size_t e = 0; e < cex.word_index.size(); ++e) event_of[cex.word_index[e]] = static_cast<int>(e);

  // layout: a-state, position in t, one cursor per thread
  std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
  std::deque<std::vector<std::uint32_t>> work;
  for (auto s : a.initial_states()) {
    std::vector<std::uint32_t> v(2 + n, 0);
    v[0] = s;
    if (seen.insert(v).second) work.push_back(std::move(v));
  }
  while (!work.empty()) {
    auto cur = std::move(work.front());
    work.pop_front();
    bool done = cur[1] == t.size();
    for (int k = 0; k < n && done; ++k) done = cur[2 + k] == seq[k].size();
    if (done && a.is_final(cur[0])) return true;
    for (const auto& e : a.edges(cur[0])) {
      auto next = cur;
      next[0] = e.target;
      if (e.symbol != automata::kEpsilon) {
        int k = 0;
        for (; k < n; ++k) {
          auto i = cur[2 + k];
          if (i < seq[k].size() && cex.word[seq[k][i]] == e.symbol) break;
        }
        if (k == n) continue;
        int ev = event_of[seq[k][cur[2 + k]]];
        if (ev >= 0) {
          if (cur[1] >= t.size() || t[cur[1]] != ev) continue;
          ++next[1];
        }
        ++next[2 + k];
      }
      if (seen.insert(next).second) work.push_back(std::move(next));
    }
  }
  return false;
}

std::vector<std::size_t> Classification::np_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < np_feasible.size(); ++i)
    if (np_feasible[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> Classification::bad_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (cls[i] == TraceClass::Bad) out.push_back(i);
  return out;
}

namespace {

void finish(Classification& c, const std::vector<Trace>& nhood, const std::vector<std::string>& keys) {
  std::set<std::string> good;
  for (std::size_t i = 0; i < nhood.size(); ++i)
    if (c.np_feasible[i]) good.insert(keys[i]);
  c.cls.assign(nhood.size(), TraceClass::Infeasible);
  for (std::size_t i = 0; i < nhood.size(); ++i) {
    if (good.count(keys[i]))
      c.cls[i] = TraceClass::Good;
    else if (c.p_feasible[i])
      c.cls[i] = TraceClass::Bad;
  }
}

}  // namespace

Classification classify_traces(const std::vector<Trace>& nhood, const Counterexample& cex, const automata::Nfa& np,
                               const automata::Nfa& p) {
  Classification c;
  const auto n = static_cast<std::ptrdiff_t>(nhood.size());
  c.np_feasible.assign(nhood.size(), 0);
  c.p_feasible.assign(nhood.size(), 0);
  std::vector<std::string> keys(nhood.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    c.np_feasible[i] = feasible(np, cex, nhood[i]);
    c.p_feasible[i] = feasible(p, cex, nhood[i]);
    keys[i] = semantics::abstract_key(observations(cex.events, nhood[i]));
  }
  finish(c, nhood, keys);
  return c;
}

Classification classify_traces_serial(const std::vector<Trace>& nhood, const Counterexample& cex,
                                      const automata::Nfa& np, const automata::Nfa& p) {
  Classification c;
  std::vector<std::string> keys;
  for (const auto& t : nhood) {
    c.np_feasible.push_back(feasible(np, cex, t));
    c.p_feasible.push_back(feasible(p, cex, t));
    keys.push_back(semantics::abstract_key(observations(cex.events, t)));
  }
  finish(c, nhood, keys);
  return c;
}

}  // namespace presafe::synthesis

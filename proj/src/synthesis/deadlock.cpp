#include "presafe/synthesis.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace presafe::synthesis {

namespace {

using Held = std::set<std::string>;
using Edges = std::set<std::pair<std::string, std::string>>;

Held walk(const wlang::Block& b, Held held, Edges& edges) {
  for (const auto& s : b) {
    switch (s.kind) {
      case wlang::StmtKind::Lock:
        for (const auto& h : held)
          if (h != s.target) edges.insert({h, s.target});
        held.insert(s.target);
        break;
      case wlang::StmtKind::Unlock: held.erase(s.target); break;
      case wlang::StmtKind::If: {
        Held a = walk(s.body, held, edges);
        Held e = walk(s.else_body, held, edges);
        a.insert(e.begin(), e.end());
        held = std::move(a);
        break;
      }
      case wlang::StmtKind::While: {
        // two passes expose orders that close around the back edge
        Held once = walk(s.body, held, edges);
        Held again = held;
        again.insert(once.begin(), once.end());
        Held twice = walk(s.body, again, edges);
        held.insert(once.begin(), once.end());
        held.insert(twice.begin(), twice.end());
        break;
      }
      default: break;
    }
  }
  return held;
}

std::vector<std::string> cycles(const Edges& edges) {
  std::map<std::string, std::set<std::string>> succ;
  std::set<std::string> nodes;
  for (const auto& [a, b] : edges) {
    succ[a].insert(b);
    nodes.insert(a);
    nodes.insert(b);
  }
  auto reach = [&](const std::string& from) {
    std::set<std::string> seen;
    std::deque<std::string> work{from};
    while (!work.empty()) {
      auto n = work.front();
      work.pop_front();
      for (const auto& m : succ[n])
        if (seen.insert(m).second) work.push_back(m);
    }
    return seen;
  };
  std::map<std::string, std::set<std::string>> r;
  for (const auto& n : nodes) r[n] = reach(n);

  std::vector<std::string> out;
  std::set<std::string> reported;
  for (const auto& n : nodes) {
    if (reported.count(n) || !r[n].count(n)) continue;
    std::set<std::string> scc;
    for (const auto& m : nodes)
      if (r[n].count(m) && r[m].count(n)) scc.insert(m);
    reported.insert(scc.begin(), scc.end());
    // shortest cycle through the smallest member
    std::map<std::string, std::string> parent;
    std::deque<std::string> work{n};
    std::string last;
    while (!work.empty() && last.empty()) {
      auto x = work.front();
      work.pop_front();
      for (const auto& y : succ[x]) {
        if (!scc.count(y)) continue;
        if (y == n) {
          last = x;
          break;
        }
        if (!parent.count(y)) {
          parent[y] = x;
          work.push_back(y);
        }
      }
    }
    std::vector<std::string> path{n};
    for (std::string x = last; x != n; x = parent[x]) path.insert(path.begin() + 1, x);
    std::string s = "lock-order cycle: ";
    for (const auto& p : path) s += p + " -> ";
    out.push_back(s + n);
  }
  return out;
}

}  // namespace

std::vector<std::string> DeadlockReport::warnings() const {
  std::vector<std::string> out = cycles;
  for (const auto& s : stuck_states) out.push_back("blocked state reachable: " + s);
  if (stuck_count > stuck_states.size())
    out.push_back(std::to_string(stuck_count - stuck_states.size()) + " further blocked states");
  if (unlock_violations > 0) out.push_back(std::to_string(unlock_violations) + " unlock of a lock not held");
  if (truncated) out.push_back("state budget exhausted; exploration incomplete");
  return out;
}

DeadlockReport detect_deadlocks(const wlang::Program& p, int unroll, std::size_t max_states) {
  DeadlockReport rep;
  Edges edges;
  for (const auto& t : p.threads) walk(t.body, {}, edges);
  rep.cycles = cycles(edges);

  semantics::CompiledProgram cp(p, unroll);
  std::unordered_set<semantics::AbstractState, semantics::StateHash> seen;
  std::deque<semantics::AbstractState> work;
  auto init = semantics::initial_abstract_state(cp);
  seen.insert(init);
  work.push_back(init);
  while (!work.empty()) {
    auto s = std::move(work.front());
    work.pop_front();
    auto step = semantics::step_abstract(cp, s, Scheduling::Preemptive);
    if (step.unlock_violation) ++rep.unlock_violations;
    // blocked threads still offer scheduler switches, so test blocking directly
    if (semantics::is_blocked(cp, s) || (step.succ.empty() && !semantics::is_final(s))) {
      if (rep.stuck_states.size() < 3) rep.stuck_states.push_back(semantics::describe(cp, s));
      ++rep.stuck_count;
    }
    for (auto& n : step.succ) {
      if (seen.size() >= max_states) {
        rep.truncated = true;
        break;
      }
      if (seen.insert(n.state).second) work.push_back(std::move(n.state));
    }
  }
  return rep;
}

}  // namespace presafe::synthesis

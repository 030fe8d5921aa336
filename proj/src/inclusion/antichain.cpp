#include "presafe/inclusion.hpp"

#include <algorithm>
#include <unordered_set>

namespace presafe::inclusion {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Counterexample: return "counterexample";
    case Verdict::BudgetExceeded: return "budget-exceeded";
    case Verdict::BoundExhausted: return "bound-exhausted";
  }
  return "?";
}

InclusionChecker::InclusionChecker(const Nfa& a, const ClosureAutomaton& b, SymbolOrder order, Budget budget)
    : a_(a), b_(b), order_(std::move(order)), budget_(budget), start_(std::chrono::steady_clock::now()) {
  witness_.push_back({0, automata::kEpsilon});
}

// breadth-first order, independent of state numbering
const std::vector<StateId>& InclusionChecker::closure_a(StateId s) {
  auto it = a_closure_.find(s);
  if (it != a_closure_.end()) return it->second;
  std::vector<StateId> order{s};
  std::unordered_set<StateId> seen{s};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& e : a_.edges(order[i]))
      if (e.symbol == automata::kEpsilon && seen.insert(e.target).second) order.push_back(e.target);
  return a_closure_.emplace(s, std::move(order)).first->second;
}

bool InclusionChecker::accepting_a(StateId s) {
  for (StateId x : closure_a(s))
    if (a_.is_final(x)) return true;
  return false;
}

Word InclusionChecker::word_of(std::uint32_t w) const {
  Word out;
  while (w != 0) {
    out.push_back(witness_[w].second);
    w = witness_[w].first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool InclusionChecker::dominated(StateId a, const std::vector<StateId>& set, bool* by_dirty) const {
  auto it = antichain_.find(a);
  if (it == antichain_.end()) return false;
  for (const Entry& e : it->second)
    if (std::includes(set.begin(), set.end(), e.set->begin(), e.set->end())) {
      if (by_dirty) *by_dirty = e.dirty;
      return true;
    }
  return false;
}

void InclusionChecker::insert(const Tuple& t) {
  auto& entries = antichain_[t.a];
  // Rule 2: evict members that the new tuple is below
  std::erase_if(entries, [&](const Entry& e) { return std::includes(e.set->begin(), e.set->end(), t.set->begin(), t.set->end()); });
  entries.push_back({t.set, t.dirty});
  frontier_.push_back(t);
}

InclusionResult InclusionChecker::run(std::size_t k) {
  k_ = k;
  InclusionResult res;
  res.k = k;
  auto is_final_b = [&](const std::vector<StateId>& set) {
    return std::any_of(set.begin(), set.end(), [&](StateId q) { return b_.is_final(q); });
  };
  if (!started_) {
    started_ = true;
    auto init = std::make_shared<const std::vector<StateId>>(b_.epsilon_closed(b_.initial_states()));
    for (StateId s : a_.initial_states())
      if (!dominated(s, *init, nullptr)) insert({s, init, 0, false});
  }
  std::uint64_t checks = 0;
  while (!frontier_.empty()) {
    if (explored_ >= budget_.max_tuples) {
      res.verdict = Verdict::BudgetExceeded;
      res.reason = "tuple budget of " + std::to_string(budget_.max_tuples) + " exhausted";
      res.tuples = explored_;
      return res;
    }
    if (budget_.timeout_s > 0 && (++checks & 63) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > budget_.timeout_s) {
        res.verdict = Verdict::BudgetExceeded;
        res.reason = "timeout";
        res.tuples = explored_;
        return res;
      }
    }
    Tuple cur = frontier_.front();
    frontier_.pop_front();
    ++explored_;
    if (accepting_a(cur.a) && !is_final_b(*cur.set)) {
      res.verdict = Verdict::Counterexample;
      res.word = word_of(cur.witness);
      res.tuples = explored_;
      return res;
    }

    std::vector<SymbolId> symbols;
    for (StateId x : closure_a(cur.a))
      for (const auto& e : a_.edges(x))
        if (e.symbol != automata::kEpsilon && std::find(symbols.begin(), symbols.end(), e.symbol) == symbols.end())
          symbols.push_back(e.symbol);
    std::sort(symbols.begin(), symbols.end(), order_);

    for (SymbolId alpha : symbols) {
      std::vector<StateId> targets;
      for (StateId x : closure_a(cur.a))
        for (const auto& e : a_.edges(x))
          if (e.symbol == alpha && std::find(targets.begin(), targets.end(), e.target) == targets.end())
            targets.push_back(e.target);

      std::vector<StateId> next;
      for (StateId q : *cur.set) {
        const auto& step = b_.step(q, alpha);
        next.insert(next.end(), step.begin(), step.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());

      bool overflow = std::any_of(next.begin(), next.end(), [&](StateId q) { return b_.eta_length(q) > k_; });
      Set full = std::make_shared<const std::vector<StateId>>(next);
      Set trimmed = full;
      if (overflow) {
        std::vector<StateId> kept;
        for (StateId q : next)
          if (b_.eta_length(q) <= k_) kept.push_back(q);
        trimmed = std::make_shared<const std::vector<StateId>>(std::move(kept));
      }

      std::uint32_t w = 0;
      for (StateId t : targets) {
        // Rule 1
        bool by_dirty = false;
        if (dominated(t, *full, &by_dirty)) {
          // the dominating tuple may vanish when the bound grows
          if (by_dirty && !cur.dirty) {
            if (w == 0) {
              witness_.push_back({cur.witness, alpha});
              w = static_cast<std::uint32_t>(witness_.size() - 1);
            }
            overflow_.push_back({t, full, w, false});
          }
          continue;
        }
        if (w == 0) {
          witness_.push_back({cur.witness, alpha});
          w = static_cast<std::uint32_t>(witness_.size() - 1);
        }
        if (overflow && !cur.dirty) overflow_.push_back({t, full, w, false});
        insert({t, trimmed, w, cur.dirty || overflow});
      }
    }
  }
  res.verdict = Verdict::Holds;
  res.tuples = explored_;
  return res;
}

void InclusionChecker::advance_bound(std::size_t new_k) {
  k_ = new_k;
  std::erase_if(frontier_, [](const Tuple& t) { return t.dirty; });
  for (auto it = antichain_.begin(); it != antichain_.end();) {
    std::erase_if(it->second, [](const Entry& e) { return e.dirty; });
    it = it->second.empty() ? antichain_.erase(it) : std::next(it);
  }
  std::vector<Tuple> seeds;
  seeds.swap(overflow_);
  for (const Tuple& t : seeds) {
    bool overflow = std::any_of(t.set->begin(), t.set->end(), [&](StateId q) { return b_.eta_length(q) > k_; });
    Tuple u = t;
    if (overflow) {
      // only possible if the bound grew by less than the recorded excess
      std::vector<StateId> kept;
      for (StateId q : *t.set)
        if (b_.eta_length(q) <= k_) kept.push_back(q);
      overflow_.push_back(t);
      u.set = std::make_shared<const std::vector<StateId>>(std::move(kept));
      u.dirty = true;
    }
    if (!dominated(u.a, *u.set, nullptr)) insert(u);
  }
}

std::size_t InclusionChecker::antichain_size() const {
  std::size_t n = 0;
  for (const auto& [a, v] : antichain_) n += v.size();
  return n;
}

bool InclusionChecker::antichain_valid() const {
  for (const auto& [a, v] : antichain_)
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        if (i != j && std::includes(v[j].set->begin(), v[j].set->end(), v[i].set->begin(), v[i].set->end()))
          return false;
  return true;
}

InclusionResult bounded_inclusion(const Nfa& a, const ClosureAutomaton& b, std::size_t k, SymbolOrder order,
                                  Budget budget) {
  InclusionChecker c(a, b, std::move(order), budget);
  return c.run(k);
}

bool is_spurious(const Word& cex, const ClosureAutomaton& b) {
  auto trace = automata::trace_automaton(cex);
  InclusionChecker c(trace, b, std::less<SymbolId>(), Budget{std::numeric_limits<std::size_t>::max(), 0});
  return c.run(automata::kUnbounded).verdict == Verdict::Holds;
}

bool is_spurious(const Word& cex, const Nfa& b, const IndependenceRelation& i) {
  ClosureAutomaton closure(b, i, automata::kUnbounded);
  return is_spurious(cex, closure);
}

InclusionResult inclusion_iterative(const Nfa& a, const ClosureAutomaton& b, SymbolOrder order, std::size_t k_start,
                                    std::size_t k_max, Budget budget) {
  InclusionChecker c(a, b, std::move(order), budget);
  std::size_t k = k_start;
  std::size_t rounds = 1;
  for (;;) {
    InclusionResult r = c.run(k);
    r.rounds = rounds;
    if (r.verdict != Verdict::Counterexample) return r;
    if (!is_spurious(r.word, b)) return r;
    if (k >= k_max) {
      r.verdict = Verdict::BoundExhausted;
      r.reason = "spurious counterexample at the largest bound " + std::to_string(k_max);
      return r;
    }
    ++k;
    ++rounds;
    c.advance_bound(k);
  }
}

}  // namespace presafe::inclusion

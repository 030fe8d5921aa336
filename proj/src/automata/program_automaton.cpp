#include "presafe/automata.hpp"

#include <algorithm>

namespace presafe::automata {

bool independent(const AbstractObservable& a, const AbstractObservable& b) {
  if (a.tid == b.tid) return false;
  return a.variable != b.variable || (a.access != Access::Write && b.access != Access::Write);
}

namespace {
std::string key_of(const AbstractObservable& o) {
  return std::to_string(o.tid) + "|" + access_name(o.access) + "|" + o.variable + "|" +
         std::to_string(o.location.thread) + "|" + o.location.label;
}
}  // namespace

SymbolId SymbolTable::intern(const AbstractObservable& o) {
  std::string key = key_of(o);
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(o);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> SymbolTable::find(const AbstractObservable& o) const {
  std::shared_lock lock(mu_);
  auto it = index_.find(key_of(o));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const AbstractObservable& SymbolTable::get(SymbolId id) const {
  std::shared_lock lock(mu_);
  return symbols_.at(id);
}

std::size_t SymbolTable::size() const {
  std::shared_lock lock(mu_);
  return symbols_.size();
}

bool SymbolTable::less(SymbolId a, SymbolId b) const { return get(a) < get(b); }

std::string SymbolTable::name(SymbolId id) const { return get(id).str(); }

IndependenceRelation SymbolTable::independence() const {
  return IndependenceRelation([this](SymbolId a, SymbolId b) { return independent(get(a), get(b)); });
}

ProgramAutomaton::ProgramAutomaton(std::shared_ptr<const semantics::CompiledProgram> program, Scheduling mode,
                                   std::shared_ptr<SymbolTable> symbols)
    : program_(std::move(program)), mode_(mode), symbols_(std::move(symbols)) {
  std::unique_lock lock(mu_);
  intern_locked(semantics::initial_abstract_state(*program_));
}

StateId ProgramAutomaton::intern_locked(semantics::AbstractState s) const {
  auto it = index_.find(s);
  if (it != index_.end()) return it->second;
  auto id = static_cast<StateId>(entries_.size());
  index_.emplace(s, id);
  entries_.push_back(Entry{std::move(s), {}, false, false});
  return id;
}

bool ProgramAutomaton::is_final(StateId s) const {
  std::shared_lock lock(mu_);
  return semantics::is_final(entries_[s].state);
}

const semantics::AbstractState& ProgramAutomaton::state(StateId s) const {
  std::shared_lock lock(mu_);
  return entries_[s].state;
}

std::span<const Edge> ProgramAutomaton::edges(StateId s) const {
  {
    std::shared_lock lock(mu_);
    const Entry& e = entries_[s];
    if (e.expanded) return e.edges;
  }
  std::unique_lock lock(mu_);
  Entry& e = entries_[s];
  if (e.expanded) return e.edges;
  auto step = semantics::step_abstract(*program_, e.state, mode_);
  std::vector<Edge> out;
  for (auto& succ : step.succ) {
    SymbolId sym = succ.obs ? symbols_->intern(*succ.obs) : kEpsilon;
    StateId t = intern_locked(std::move(succ.state));
    if (sym == kEpsilon && t == s) continue;
    Edge edge{sym, t};
    if (std::find(out.begin(), out.end(), edge) == out.end()) out.push_back(edge);
  }
  Entry& again = entries_[s];  // deque references survive push_back
  again.edges = std::move(out);
  again.violation = step.unlock_violation;
  again.expanded = true;
  return again.edges;
}

bool ProgramAutomaton::unlock_violation(StateId s) const {
  edges(s);
  std::shared_lock lock(mu_);
  return entries_[s].violation;
}

std::string ProgramAutomaton::state_name(StateId s) const {
  std::shared_lock lock(mu_);
  return "s" + std::to_string(s);
}

std::size_t ProgramAutomaton::expanded_states() const {
  std::shared_lock lock(mu_);
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.expanded; }));
}

std::size_t ProgramAutomaton::known_states() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::shared_ptr<ProgramAutomaton> build_abstract_automaton(const wlang::Program& p, Scheduling mode, int unroll,
                                                           std::shared_ptr<SymbolTable> symbols) {
  auto compiled = std::make_shared<const semantics::CompiledProgram>(p, unroll);
  return std::make_shared<ProgramAutomaton>(std::move(compiled), mode, std::move(symbols));
}

}  // namespace presafe::automata

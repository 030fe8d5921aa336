#include "presafe/synthesis.hpp"

#include <algorithm>
#include <map>

namespace presafe::synthesis {

std::string EventId::str() const {
  std::string s = observable().str();
  if (occurrence > 0) s += "#" + std::to_string(occurrence);
  return s;
}

namespace {

Counterexample make(const Word& word, const SymbolTable& symbols, bool project) {
  Counterexample c;
  c.word = word;
  std::map<AbstractObservable, int> seen;
  for (auto sym : word) {
    const AbstractObservable& o = symbols.get(sym);
    c.all.push_back({o.tid, o.access, o.variable, o.location, seen[o]++});
  }
  c.relevant.assign(word.size(), project ? 0 : 1);
  if (project)
    for (std::size_t i = 0; i < word.size(); ++i)
      for (std::size_t j = 0; j < word.size() && !c.relevant[i]; ++j)
        if (c.all[i].tid != c.all[j].tid && !automata::independent(c.all[i].observable(), c.all[j].observable()))
          c.relevant[i] = 1;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (c.relevant[i]) {
      c.events.push_back(c.all[i]);
      c.word_index.push_back(static_cast<int>(i));
    }
  return c;
}

}  // namespace

Counterexample analyze_counterexample(const Word& word, const SymbolTable& symbols) {
  return make(word, symbols, true);
}

Counterexample unprojected_counterexample(const Word& word, const SymbolTable& symbols) {
  return make(word, symbols, false);
}

Trace identity_trace(std::size_t n) {
  Trace t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint16_t>(i);
  return t;
}

std::vector<Trace> neighborhood(const std::vector<EventId>& events, std::size_t cap) {
  std::map<int, std::vector<std::uint16_t>> by_thread;
  for (std::size_t i = 0; i < events.size(); ++i) by_thread[events[i].tid].push_back(static_cast<std::uint16_t>(i));
  std::vector<std::vector<std::uint16_t>> seqs;
  for (auto& [tid, s] : by_thread) seqs.push_back(std::move(s));

  std::vector<Trace> out;
  std::vector<std::size_t> next(seqs.size(), 0);
  Trace cur;
  auto rec = [&](auto& self) -> void {
    if (cur.size() == events.size()) {
      if (out.size() >= cap) throw BudgetError("neighborhood exceeds " + std::to_string(cap) + " traces");
      out.push_back(cur);
      return;
    }
    for (std::size_t t = 0; t < seqs.size(); ++t) {
      if (next[t] == seqs[t].size()) continue;
      cur.push_back(seqs[t][next[t]++]);
      self(self);
      --next[t];
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<AbstractObservable> observations(const std::vector<EventId>& events, const Trace& t) {
  std::vector<AbstractObservable> out;
  out.reserve(t.size());
  for (auto e : t) out.push_back(events[e].observable());
  return out;
}

std::string render_trace(const std::vector<EventId>& events, const Trace& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "; " : "") + events[t[i]].str();
  return s;
}

std::vector<int> positions(const Trace& t) {
  std::vector<int> pos(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pos[t[i]] = static_cast<int>(i);
  return pos;
}

Constraint Constraint::of(synthesis::Atom a) {
  Constraint c;
  c.kind = Kind::Atom;
  c.atom = a;
  return c;
}

Constraint Constraint::conj(const std::vector<synthesis::Atom>& atoms) {
  std::vector<Constraint> args;
  for (auto a : atoms) args.push_back(of(a));
  return conj(std::move(args));
}

Constraint Constraint::conj(std::vector<Constraint> c) {
  if (c.empty()) return truth();
  Constraint out;
  out.kind = Kind::And;
  out.args = std::move(c);
  return out;
}

Constraint Constraint::disj(std::vector<Constraint> c) {
  Constraint out;
  out.kind = Kind::Or;
  out.args = std::move(c);
  return out;
}

Constraint Constraint::negate(Constraint c) {
  Constraint out;
  out.kind = Kind::Not;
  out.args.push_back(std::move(c));
  return out;
}

bool Constraint::eval(const std::vector<int>& position) const {
  switch (kind) {
    case Kind::True: return true;
    case Kind::Atom: return position[atom.before] < position[atom.after];
    case Kind::And:
      return std::all_of(args.begin(), args.end(), [&](const Constraint& c) { return c.eval(position); });
    case Kind::Or:
      return std::any_of(args.begin(), args.end(), [&](const Constraint& c) { return c.eval(position); });
    case Kind::Not: return !args[0].eval(position);
  }
  return false;
}

bool Constraint::eval_trace(const Trace& t) const { return eval(positions(t)); }

std::vector<synthesis::Atom> Constraint::atoms() const {
  if (kind == Kind::Atom) return {atom};
  std::vector<synthesis::Atom> out;
  if (kind == Kind::And)
    for (const auto& c : args) {
      auto sub = c.atoms();
      out.insert(out.end(), sub.begin(), sub.end());
    }
  return out;
}

std::string Constraint::str(const std::vector<EventId>& events) const {
  auto join = [&](const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) {
      bool paren = args[i].kind == Kind::And || args[i].kind == Kind::Or;
      s += (i ? sep : "") + (paren ? "(" + args[i].str(events) + ")" : args[i].str(events));
    }
    return s;
  };
  switch (kind) {
    case Kind::True: return "true";
    case Kind::Atom: return events[atom.before].str() + " < " + events[atom.after].str();
    case Kind::And: return join(" && ");
    case Kind::Or: return join(" || ");
    case Kind::Not: return "!(" + args[0].str(events) + ")";
  }
  return "";
}

Constraint phi_of_trace(const std::vector<EventId>& events, const Trace& t) {
  std::vector<synthesis::Atom> atoms;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const EventId& a = events[t[i]];
      const EventId& b = events[t[j]];
      if (a.tid != b.tid && !automata::independent(a.observable(), b.observable()))
        atoms.push_back({t[i], t[j]});
    }
  std::sort(atoms.begin(), atoms.end());
  return Constraint::conj(atoms);
}

}  // namespace presafe::synthesis
